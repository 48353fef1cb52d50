#ifndef TECSOE_TESTS_TEST_UTIL_HPP
#define TECSOE_TESTS_TEST_UTIL_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace testutil {

inline std::filesystem::path testdata_dir() {
    return std::filesystem::path(TECSOE_TESTDATA_DIR);
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string fixture(const std::string& name) {
    return read_file(testdata_dir() / name);
}

} // namespace testutil

#endif // TECSOE_TESTS_TEST_UTIL_HPP
