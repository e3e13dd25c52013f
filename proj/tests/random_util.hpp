#pragma once

#include <random>

#include "nilcone/quiver_rep.hpp"
#include "nilcone/rational_matrix.hpp"

namespace testutil {

using nilcone::Matrix;

inline Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& gen, int range = 3) {
    std::uniform_int_distribution<int> entry(-range, range);
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = entry(gen);
    return m;
}

inline Matrix random_invertible(std::size_t d, std::mt19937_64& gen) {
    while (true) {
        Matrix m = random_matrix(d, d, gen);
        if (nilcone::rank(m) == d)
            return m;
    }
}

// Simultaneous base change g_i at every vertex: B_h -> g_head B_h g_tail^{-1}.
inline nilcone::QuiverRep conjugate(const nilcone::QuiverRep& rep, std::mt19937_64& gen) {
    std::vector<Matrix> g, g_inv;
    for (int d : rep.dims().dims) {
        g.push_back(random_invertible(static_cast<std::size_t>(d), gen));
        g_inv.push_back(nilcone::inverse(g.back()));
    }
    auto maps = rep.maps();
    const auto edges = rep.shape().edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto t = static_cast<std::size_t>(edges[e].tail);
        const auto h = static_cast<std::size_t>(edges[e].head);
        maps[e].forward = g[h] * maps[e].forward * g_inv[t];
        maps[e].backward = g[t] * maps[e].backward * g_inv[h];
    }
    return nilcone::QuiverRep(rep.shape(), rep.dims(), std::move(maps));
}

}  // namespace testutil
