#pragma once

#include "covmat/charmat.hpp"
#include "covmat/core.hpp"
#include "covmat/matrix.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(COVMAT_DATA_DIR) + "/" + name; }

inline std::string read_data(const std::string& name) {
    std::ifstream in(data_path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline covmat::BlockFamily four_objects() { return covmat::parse_family(read_data("four_objects.cov")); }
inline covmat::BlockFamily six_objects() { return covmat::parse_family(read_data("six_objects.cov")); }

inline covmat::ObjectSet set_of(const covmat::Universe& u, const std::string& labels) {
    return covmat::parse_label_set(u, labels);
}

using Grid = std::vector<std::vector<int>>;

template <typename M>
Grid grid(const M& m) {
    Grid g(m.rows(), std::vector<int>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            g[i][j] = m.get(i, j);
    return g;
}

inline covmat::BoolMatrix bool_from(const Grid& g) {
    covmat::BoolMatrix m(g.size(), g.empty() ? 0 : g[0].size());
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g[i].size(); ++j)
            m.set(i, j, g[i][j] != 0);
    return m;
}

inline Grid random_grid(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double p = 0.5) {
    std::bernoulli_distribution coin(p);
    Grid g(rows, std::vector<int>(cols));
    for (auto& row : g)
        for (auto& v : row)
            v = coin(rng);
    return g;
}

// Plain integer evaluation of both products, independent of the bit kernels.
inline Grid scalar_bool_product(const Grid& a, const Grid& b) {
    Grid out(a.size(), std::vector<int>(b.empty() ? 0 : b[0].size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < out[i].size(); ++j)
            for (std::size_t k = 0; k < b.size(); ++k)
                out[i][j] |= a[i][k] & b[k][j];
    return out;
}

inline Grid scalar_sharp_product(const Grid& a, const Grid& b) {
    Grid out(a.size(), std::vector<int>(b.empty() ? 0 : b[0].size(), 2));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < out[i].size(); ++j)
            for (std::size_t k = 0; k < b.size(); ++k)
                out[i][j] = std::min(out[i][j], b[k][j] - a[i][k] + 1);
    return out;
}

inline Grid transpose_grid(const Grid& a) {
    Grid out(a.empty() ? 0 : a[0].size(), std::vector<int>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            out[j][i] = a[i][j];
    return out;
}

inline Grid membership_grid(const covmat::BlockFamily& f) {
    Grid g(f.object_count(), std::vector<int>(f.block_count()));
    for (std::size_t k = 0; k < f.block_count(); ++k)
        for (std::size_t i = 0; i < f.object_count(); ++i)
            g[i][k] = f.members(k).test(i);
    return g;
}

// Gamma and pi straight from the scalar formulas.
inline Grid oracle_gamma(const covmat::BlockFamily& f) {
    const auto m = membership_grid(f);
    return scalar_bool_product(m, transpose_grid(m));
}
inline Grid oracle_pi(const covmat::BlockFamily& f) {
    const auto m = membership_grid(f);
    return scalar_sharp_product(m, transpose_grid(m));
}

} // namespace testing
