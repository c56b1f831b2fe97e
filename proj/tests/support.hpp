#ifndef ZHAT_TESTS_SUPPORT_HPP
#define ZHAT_TESTS_SUPPORT_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "zhat/io.hpp"
#include "zhat/zhat.hpp"

namespace testing {

inline std::string data_path(const std::string& rel) { return std::string(ZHAT_DATA_DIR) + "/" + rel; }

inline zhat::PlumbingGraph graph(const std::string& name) { return zhat::load_graph(data_path("graphs/" + name + ".json")); }

inline std::string golden(const std::string& name)
{
    std::ifstream in(data_path("golden/" + name + ".txt"));
    std::string line;
    std::getline(in, line);
    return line;
}

inline zhat::MatrixZ matrix(std::initializer_list<std::initializer_list<long>> rows)
{
    zhat::MatrixZ m(rows.size(), rows.begin()->size());
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (long v : r)
            m(i, j++) = v;
        ++i;
    }
    return m;
}

inline zhat::MatrixQ qmatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    return zhat::cast_matrix<zhat::Rational>(matrix(rows));
}

} // namespace testing

#endif
