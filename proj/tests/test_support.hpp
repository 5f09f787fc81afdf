#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#ifndef NESTFOLD_SOURCE_DIR
#define NESTFOLD_SOURCE_DIR "."
#endif

namespace nestfold::test {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string source_path(const std::string& rel) { return std::string(NESTFOLD_SOURCE_DIR) + "/" + rel; }
inline std::string read_sample(const std::string& name) { return read_file(source_path("samples/" + name)); }
inline std::string read_golden(const std::string& name) { return read_file(source_path("golden/" + name)); }

} // namespace nestfold::test
