#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sokoban/level.hpp"

namespace sokoban {

struct LevelRef {
    std::string id;
    Level level;
};

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Loads one level from a file; `index` is 1-based for multi-level files and
// 0 selects the only (or first) level.
inline Level load_level_file(const std::filesystem::path& path, int index = 0) {
    std::vector<std::string> chunks = split_level_chunks(read_text_file(path));
    if (chunks.empty()) throw Error("no levels in " + path.string());
    if (index == 0) index = 1;
    if (index < 1 || index > static_cast<int>(chunks.size()))
        throw Error("level index " + std::to_string(index) + " out of range for " +
                    path.string() + " (" + std::to_string(chunks.size()) + " levels)");
    return parse_level(chunks[static_cast<std::size_t>(index - 1)]);
}

// Loads a level file or every *.xsb/*.txt file of a directory (sorted by
// name). Multi-level files yield ids stem:1, stem:2, ...
inline std::vector<LevelRef> load_levels(const std::filesystem::path& path) {
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(path)) {
        for (const auto& entry : std::filesystem::directory_iterator(path)) {
            if (!entry.is_regular_file()) continue;
            auto ext = entry.path().extension().string();
            if (ext == ".xsb" || ext == ".txt") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
    } else {
        files.push_back(path);
    }
    std::vector<LevelRef> out;
    for (const auto& file : files) {
        std::vector<std::string> chunks = split_level_chunks(read_text_file(file));
        std::string stem = file.stem().string();
        for (std::size_t i = 0; i < chunks.size(); ++i) {
            std::string id = chunks.size() == 1 ? stem : stem + ":" + std::to_string(i + 1);
            out.push_back(LevelRef{std::move(id), parse_level(chunks[i])});
        }
    }
    return out;
}

}  // namespace sokoban
