#include "hmb/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hmb {

namespace {

std::uint8_t to_byte(double v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

std::vector<std::uint8_t> to_rgb8(const Image& img) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(img.size() * 3);
    for (const Rgb& c : img) {
        bytes.push_back(to_byte(c.r));
        bytes.push_back(to_byte(c.g));
        bytes.push_back(to_byte(c.b));
    }
    return bytes;
}

Image from_rgb8(int width, int height, const std::uint8_t* bytes) {
    Image img(width, height);
    std::size_t i = 0;
    for (Rgb& c : img) {
        c = {bytes[i] / 255.0, bytes[i + 1] / 255.0, bytes[i + 2] / 255.0};
        i += 3;
    }
    return img;
}

bool has_extension(const std::string& path, const std::string& ext) {
    if (path.size() < ext.size()) {
        return false;
    }
    std::string tail = path.substr(path.size() - ext.size());
    std::transform(tail.begin(), tail.end(), tail.begin(), [](unsigned char c) { return std::tolower(c); });
    return tail == ext;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open: " + path);
    }
    return in;
}

void put_u32_le(std::ostream& out, std::uint32_t v) {
    const std::array<char, 4> b{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                static_cast<char>((v >> 16) & 0xff),
                                static_cast<char>((v >> 24) & 0xff)};
    out.write(b.data(), 4);
}

std::uint32_t get_u32_le(std::istream& in) {
    std::array<unsigned char, 4> b{};
    in.read(reinterpret_cast<char*>(b.data()), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

template <typename T, typename F>
PlaneDump pack(const Plane<T>& plane, std::uint32_t channels, F&& emit) {
    PlaneDump d;
    d.width = static_cast<std::uint32_t>(plane.width());
    d.height = static_cast<std::uint32_t>(plane.height());
    d.channels = channels;
    d.values.reserve(plane.size() * channels);
    for (const T& v : plane) {
        emit(d.values, v);
    }
    return d;
}

}  // namespace

void write_png(const std::string& path, const Image& img) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = PNG_FORMAT_RGB;
    const auto bytes = to_rgb8(img);
    if (png_image_write_to_file(&image, path.c_str(), 0, bytes.data(), 0, nullptr) == 0) {
        throw std::runtime_error("PNG write failed for " + path + ": " + image.message);
    }
}

Image read_png(const std::string& path) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    if (png_image_begin_read_from_file(&image, path.c_str()) == 0) {
        throw std::runtime_error("PNG read failed for " + path + ": " + image.message);
    }
    image.format = PNG_FORMAT_RGB;
    std::vector<std::uint8_t> bytes(PNG_IMAGE_SIZE(image));
    if (png_image_finish_read(&image, nullptr, bytes.data(), 0, nullptr) == 0) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw std::runtime_error("PNG decode failed for " + path + ": " + msg);
    }
    return from_rgb8(static_cast<int>(image.width), static_cast<int>(image.height), bytes.data());
}

void write_ppm(const std::string& path, const Image& img) {
    auto out = open_out(path);
    out << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
    const auto bytes = to_rgb8(img);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

Image read_ppm(const std::string& path) {
    auto in = open_in(path);
    std::string magic;
    int w = 0;
    int h = 0;
    int maxval = 0;
    in >> magic >> w >> h >> maxval;
    if (magic != "P6" || w <= 0 || h <= 0 || maxval != 255) {
        throw std::runtime_error("unsupported PPM: " + path);
    }
    in.get();
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(w) * h * 3);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!in) {
        throw std::runtime_error("truncated PPM: " + path);
    }
    return from_rgb8(w, h, bytes.data());
}

void write_image(const std::string& path, const Image& img) {
    if (has_extension(path, ".ppm")) {
        write_ppm(path, img);
    } else {
        write_png(path, img);
    }
}

Image read_image(const std::string& path) {
    return has_extension(path, ".ppm") ? read_ppm(path) : read_png(path);
}

void write_pgm(const std::string& path, const Mask& mask) {
    auto out = open_out(path);
    out << "P5\n" << mask.width() << ' ' << mask.height() << "\n255\n";
    for (unsigned char m : mask) {
        out.put(static_cast<char>(m != 0 ? 255 : 0));
    }
}

void write_plane_dump(const std::string& path, const PlaneDump& dump) {
    if (dump.values.size() != static_cast<std::size_t>(dump.width) * dump.height * dump.channels) {
        throw std::invalid_argument("plane dump size does not match its header");
    }
    auto out = open_out(path);
    out.write("HMBP", 4);
    put_u32_le(out, dump.width);
    put_u32_le(out, dump.height);
    put_u32_le(out, dump.channels);
    for (float v : dump.values) {
        put_u32_le(out, std::bit_cast<std::uint32_t>(v));
    }
}

PlaneDump read_plane_dump(const std::string& path) {
    auto in = open_in(path);
    char magic[4] = {};
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "HMBP", 4) != 0) {
        throw std::runtime_error("not an HMBP plane dump: " + path);
    }
    PlaneDump d;
    d.width = get_u32_le(in);
    d.height = get_u32_le(in);
    d.channels = get_u32_le(in);
    const std::size_t n = static_cast<std::size_t>(d.width) * d.height * d.channels;
    d.values.resize(n);
    for (auto& v : d.values) {
        v = std::bit_cast<float>(get_u32_le(in));
    }
    if (!in) {
        throw std::runtime_error("truncated HMBP plane dump: " + path);
    }
    return d;
}

PlaneDump to_dump(const Image& img) {
    return pack(img, 3, [](std::vector<float>& o, const Rgb& c) {
        o.push_back(static_cast<float>(c.r));
        o.push_back(static_cast<float>(c.g));
        o.push_back(static_cast<float>(c.b));
    });
}

PlaneDump to_dump(const Plane<double>& plane) {
    return pack(plane, 1, [](std::vector<float>& o, double v) { o.push_back(static_cast<float>(v)); });
}

PlaneDump to_dump(const Plane<Vec2>& plane) {
    return pack(plane, 2, [](std::vector<float>& o, const Vec2& v) {
        o.push_back(static_cast<float>(v.x));
        o.push_back(static_cast<float>(v.y));
    });
}

PlaneDump to_dump(const Plane<Vec3>& plane) {
    return pack(plane, 3, [](std::vector<float>& o, const Vec3& v) {
        o.push_back(static_cast<float>(v.x));
        o.push_back(static_cast<float>(v.y));
        o.push_back(static_cast<float>(v.z));
    });
}

PlaneDump to_dump(const Plane<int>& plane) {
    return pack(plane, 1, [](std::vector<float>& o, int v) { o.push_back(static_cast<float>(v)); });
}

PlaneDump to_dump(const Mask& mask) {
    return pack(mask, 1, [](std::vector<float>& o, unsigned char v) {
        o.push_back(v != 0 ? 1.0f : 0.0f);
    });
}

}  // namespace hmb
