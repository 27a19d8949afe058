// Writes the bundled procedural scenes as JSON into the given directory.

#include <filesystem>
#include <iostream>

#include "hmb/scenes.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_scenes <output-dir>\n";
        return 2;
    }
    const std::filesystem::path dir = argv[1];
    std::filesystem::create_directories(dir);
    hmb::save_scene((dir / "two_quads.json").string(), hmb::scenes::two_quads());
    hmb::save_scene((dir / "occluder_pattern.json").string(), hmb::scenes::occluder_pattern());
    hmb::save_scene((dir / "moving_quad.json").string(), hmb::scenes::moving_quad());
    hmb::save_scene((dir / "static_boxes.json").string(), hmb::scenes::static_boxes());
    return 0;
}
