#include "hmb/scene_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hmb {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error("scene: " + what); }

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
        fail("missing key '" + std::string(key) + "' in " + where);
    }
    return obj.at(key);
}

double as_number(const json& j, const std::string& where) {
    if (!j.is_number()) {
        fail(where + " must be a number");
    }
    return j.get<double>();
}

Vec3 as_vec3(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) {
        fail(where + " must be an array of 3 numbers");
    }
    return {as_number(j[0], where), as_number(j[1], where), as_number(j[2], where)};
}

Rgb as_rgb(const json& j, const std::string& where) {
    const Vec3 v = as_vec3(j, where);
    return {v.x, v.y, v.z};
}

json to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }
json to_json(const Rgb& c) { return json::array({c.r, c.g, c.b}); }

Camera parse_camera(const json& j) {
    Camera cam;
    cam.position = as_vec3(require(j, "position", "camera"), "camera.position");
    cam.look_at = as_vec3(require(j, "look_at", "camera"), "camera.look_at");
    cam.up = as_vec3(require(j, "up", "camera"), "camera.up");
    cam.vertical_fov = as_number(require(j, "fov", "camera"), "camera.fov");
    const json& w = require(j, "width", "camera");
    const json& h = require(j, "height", "camera");
    if (!w.is_number_integer() || !h.is_number_integer()) {
        fail("camera width and height must be integers");
    }
    cam.width = w.get<int>();
    cam.height = h.get<int>();
    return cam;
}

Light parse_light(const json& j, std::size_t i) {
    const std::string where = "lights[" + std::to_string(i) + "]";
    Light light;
    const std::string type = require(j, "type", where).get<std::string>();
    if (type == "directional") {
        light.type = LightType::Directional;
        light.direction = as_vec3(require(j, "direction", where), where + ".direction");
        if (light.direction.length_squared() == 0.0) {
            fail(where + ".direction must be nonzero");
        }
    } else if (type == "point") {
        light.type = LightType::Point;
        light.position = as_vec3(require(j, "position", where), where + ".position");
    } else {
        fail(where + ".type must be 'directional' or 'point', got '" + type + "'");
    }
    light.intensity = as_number(require(j, "intensity", where), where + ".intensity");
    return light;
}

MeshInstance parse_mesh(const json& j, std::size_t i) {
    const std::string where = "meshes[" + std::to_string(i) + "]";
    MeshInstance mesh;
    const json& id = require(j, "id", where);
    if (!id.is_number_integer()) {
        fail(where + ".id must be an integer");
    }
    mesh.mesh_id = id.get<int>();
    mesh.albedo = as_rgb(require(j, "albedo", where), where + ".albedo");
    if (j.contains("frame_displacement")) {
        mesh.frame_displacement = as_vec3(j.at("frame_displacement"), where + ".frame_displacement");
    }
    const std::string primitive = require(j, "primitive", where).get<std::string>();
    const json& verts = require(j, "vertices", where);
    if (!verts.is_array()) {
        fail(where + ".vertices must be an array");
    }
    std::vector<Vec3> v;
    for (std::size_t k = 0; k < verts.size(); ++k) {
        v.push_back(as_vec3(verts[k], where + ".vertices[" + std::to_string(k) + "]"));
    }
    if (primitive == "quad") {
        if (v.size() != 4) {
            fail(where + ": quad needs exactly 4 vertices");
        }
        mesh.triangles = make_quad(v[0], v[1], v[2], v[3]);
    } else if (primitive == "box") {
        if (v.size() != 2) {
            fail(where + ": box needs 2 corner vertices");
        }
        mesh.triangles = make_box(component_min(v[0], v[1]), component_max(v[0], v[1]));
    } else if (primitive == "tris") {
        if (v.empty() || v.size() % 3 != 0) {
            fail(where + ": tris needs a positive multiple of 3 vertices");
        }
        for (std::size_t k = 0; k < v.size(); k += 3) {
            mesh.triangles.push_back({v[k], v[k + 1], v[k + 2]});
        }
    } else {
        fail(where + ".primitive must be quad, box or tris, got '" + primitive + "'");
    }
    return mesh;
}

}  // namespace

SceneFile parse_scene(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        fail("top level must be an object");
    }

    SceneFile file;
    try {
        Scene& s = file.scene;
        s.camera = parse_camera(require(root, "camera", "scene"));
        s.frame_rate = as_number(require(root, "frame_rate", "scene"), "frame_rate");
        s.exposure = as_number(require(root, "exposure", "scene"), "exposure");
        if (root.contains("background_color")) {
            s.background = as_rgb(root.at("background_color"), "background_color");
        }
        if (root.contains("ambient")) {
            s.ambient = as_number(root.at("ambient"), "ambient");
        }
        if (root.contains("lights")) {
            const json& lights = root.at("lights");
            for (std::size_t i = 0; i < lights.size(); ++i) {
                s.lights.push_back(parse_light(lights[i], i));
            }
        }
        if (root.contains("meshes")) {
            const json& meshes = root.at("meshes");
            for (std::size_t i = 0; i < meshes.size(); ++i) {
                s.meshes.push_back(parse_mesh(meshes[i], i));
            }
        }
        if (root.contains("soft_z_extent")) {
            file.soft_z_extent = as_number(root.at("soft_z_extent"), "soft_z_extent");
        }
        if (root.contains("edge_threshold")) {
            file.edge_threshold = as_number(root.at("edge_threshold"), "edge_threshold");
        }
        s.validate();
    } catch (const json::exception& e) {
        fail(e.what());
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    return file;
}

SceneFile load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("scene: cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scene(ss.str());
}

std::string serialize_scene(const SceneFile& file) {
    const Scene& s = file.scene;
    json root;
    root["camera"] = {{"position", to_json(s.camera.position)},
                      {"look_at", to_json(s.camera.look_at)},
                      {"up", to_json(s.camera.up)},
                      {"fov", s.camera.vertical_fov},
                      {"width", s.camera.width},
                      {"height", s.camera.height}};
    root["frame_rate"] = s.frame_rate;
    root["exposure"] = s.exposure;
    root["background_color"] = to_json(s.background);
    root["ambient"] = s.ambient;
    if (file.soft_z_extent) {
        root["soft_z_extent"] = *file.soft_z_extent;
    }
    if (file.edge_threshold) {
        root["edge_threshold"] = *file.edge_threshold;
    }
    root["lights"] = json::array();
    for (const auto& l : s.lights) {
        json jl = {{"intensity", l.intensity}};
        if (l.type == LightType::Directional) {
            jl["type"] = "directional";
            jl["direction"] = to_json(l.direction);
        } else {
            jl["type"] = "point";
            jl["position"] = to_json(l.position);
        }
        root["lights"].push_back(jl);
    }
    root["meshes"] = json::array();
    for (const auto& m : s.meshes) {
        json verts = json::array();
        for (const auto& tri : m.triangles) {
            for (const auto& v : tri) {
                verts.push_back(to_json(v));
            }
        }
        root["meshes"].push_back({{"id", m.mesh_id},
                                  {"albedo", to_json(m.albedo)},
                                  {"frame_displacement", to_json(m.frame_displacement)},
                                  {"primitive", "tris"},
                                  {"vertices", verts}});
    }
    return root.dump(1);
}

void save_scene(const std::string& path, const SceneFile& file) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("scene: cannot write " + path);
    }
    out << serialize_scene(file) << '\n';
}

}  // namespace hmb
