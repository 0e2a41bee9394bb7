#pragma once

#include <fstream>
#include <sstream>
#include <string>

namespace testgen {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string data_file(const std::string& name) { return read_file(std::string(SEQSAT_TEST_DATA) + "/" + name); }

} // namespace testgen
