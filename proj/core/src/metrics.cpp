#include "hmb/metrics.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "hmb/shading.hpp"

namespace hmb {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

void require_same_shape(const Image& a, const Image& b) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument("image resolutions differ");
    }
}

std::array<double, kWindow> gaussian_window() {
    std::array<double, kWindow> g{};
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
        const double d = i - kWindow / 2;
        g[i] = std::exp(-(d * d) / (2.0 * kSigma * kSigma));
        sum += g[i];
    }
    for (double& v : g) {
        v /= sum;
    }
    return g;
}

// Separable Gaussian over every full window ("valid" region).
Plane<double> filter_valid(const Plane<double>& src) {
    static const auto g = gaussian_window();
    const int ow = src.width() - kWindow + 1;
    const int oh = src.height() - kWindow + 1;
    Plane<double> horiz(ow, src.height());
    for (int y = 0; y < src.height(); ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int i = 0; i < kWindow; ++i) {
                acc += g[i] * src.at(x + i, y);
            }
            horiz.at(x, y) = acc;
        }
    }
    Plane<double> out(ow, oh);
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int j = 0; j < kWindow; ++j) {
                acc += g[j] * horiz.at(x, y + j);
            }
            out.at(x, y) = acc;
        }
    }
    return out;
}

Plane<double> channel_plane(const Image& img, const std::function<double(const Rgb&)>& pick) {
    Plane<double> out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            out.at(x, y) = pick(img.at(x, y));
        }
    }
    return out;
}

double ssim_plane(const Plane<double>& a, const Plane<double>& b) {
    const int w = a.width();
    const int h = a.height();
    Plane<double> aa(w, h);
    Plane<double> bb(w, h);
    Plane<double> ab(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            aa.at(x, y) = a.at(x, y) * a.at(x, y);
            bb.at(x, y) = b.at(x, y) * b.at(x, y);
            ab.at(x, y) = a.at(x, y) * b.at(x, y);
        }
    }
    const auto mu_a = filter_valid(a);
    const auto mu_b = filter_valid(b);
    const auto e_aa = filter_valid(aa);
    const auto e_bb = filter_valid(bb);
    const auto e_ab = filter_valid(ab);

    double sum = 0.0;
    for (int y = 0; y < mu_a.height(); ++y) {
        for (int x = 0; x < mu_a.width(); ++x) {
            const double ma = mu_a.at(x, y);
            const double mb = mu_b.at(x, y);
            const double va = e_aa.at(x, y) - ma * ma;
            const double vb = e_bb.at(x, y) - mb * mb;
            const double cov = e_ab.at(x, y) - ma * mb;
            sum += ((2.0 * ma * mb + kC1) * (2.0 * cov + kC2)) /
                   ((ma * ma + mb * mb + kC1) * (va + vb + kC2));
        }
    }
    return sum / static_cast<double>(mu_a.size());
}

}  // namespace

double psnr(const Image& a, const Image& b, MetricChannels channels) {
    require_same_shape(a, b);
    if (a.size() == 0) {
        throw std::invalid_argument("empty image");
    }
    double sq = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Rgb& ca = a.data()[i];
        const Rgb& cb = b.data()[i];
        if (channels == MetricChannels::Luma) {
            const double d = luminance(ca) - luminance(cb);
            sq += d * d;
            ++count;
        } else {
            for (int c = 0; c < 3; ++c) {
                const double d = ca[c] - cb[c];
                sq += d * d;
            }
            count += 3;
        }
    }
    const double mse = sq / static_cast<double>(count);
    if (mse == 0.0) {
        return kPsnrCap;
    }
    return std::min(kPsnrCap, 10.0 * std::log10(1.0 / mse));
}

double ssim(const Image& a, const Image& b, MetricChannels channels) {
    require_same_shape(a, b);
    if (a.width() < kWindow || a.height() < kWindow) {
        throw std::invalid_argument("image smaller than the 11x11 SSIM window");
    }
    if (channels == MetricChannels::Luma) {
        auto luma = [](const Rgb& c) { return luminance(c); };
        return ssim_plane(channel_plane(a, luma), channel_plane(b, luma));
    }
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
        auto pick = [c](const Rgb& v) { return v[c]; };
        sum += ssim_plane(channel_plane(a, pick), channel_plane(b, pick));
    }
    return sum / 3.0;
}

Image quantize8(const Image& img) {
    Image out(img.width(), img.height());
    auto q = [](double v) { return std::round(std::clamp(v, 0.0, 1.0) * 255.0) / 255.0; };
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const Rgb& c = img.at(x, y);
            out.at(x, y) = {q(c.r), q(c.g), q(c.b)};
        }
    }
    return out;
}

MetricReport compare_images(const Image& a, const Image& b, const MetricOptions& options) {
    require_same_shape(a, b);
    if (options.quantize) {
        const Image qa = quantize8(a);
        const Image qb = quantize8(b);
        return {psnr(qa, qb, options.psnr_channels), ssim(qa, qb, options.ssim_channels)};
    }
    return {psnr(a, b, options.psnr_channels), ssim(a, b, options.ssim_channels)};
}

}  // namespace hmb
