#include "nilcone/probe.hpp"

#include <functional>
#include <random>
#include <stdexcept>

namespace nilcone {

namespace {

struct Layout {
    std::vector<std::size_t> forward_col;   // first column of B_h per edge
    std::vector<std::size_t> backward_col;  // first column of B_hbar per edge
    std::vector<std::size_t> vertex_row;    // first row of mu_i per vertex
    std::size_t cols = 0;
    std::size_t rows = 0;
};

Layout layout_of(const QuiverRep& rep) {
    Layout l;
    for (const auto& m : rep.maps()) {
        l.forward_col.push_back(l.cols);
        l.cols += m.forward.rows() * m.forward.cols();
        l.backward_col.push_back(l.cols);
        l.cols += m.backward.rows() * m.backward.cols();
    }
    for (int d : rep.dims().dims) {
        l.vertex_row.push_back(l.rows);
        l.rows += static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
    }
    return l;
}

}  // namespace

Matrix moment_jacobian(const QuiverRep& rep) {
    const Layout l = layout_of(rep);
    Matrix jac(l.rows, l.cols);
    const auto edges = rep.shape().edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const Matrix& b = rep.maps()[e].forward;    // head x tail
        const Matrix& bb = rep.maps()[e].backward;  // tail x head
        const auto t = static_cast<std::size_t>(edges[e].tail);
        const auto h = static_cast<std::size_t>(edges[e].head);
        const std::size_t dt = b.cols();
        const std::size_t dh = b.rows();
        const std::size_t rt = l.vertex_row[t];
        const std::size_t rh = l.vertex_row[h];
        // mu_tail += bb b, mu_head -= b bb
        for (std::size_t p = 0; p < dh; ++p)
            for (std::size_t q = 0; q < dt; ++q) {
                const std::size_t col = l.forward_col[e] + p * dt + q;
                for (std::size_t i = 0; i < dt; ++i)
                    jac(rt + i * dt + q, col) += bb(i, p);
                for (std::size_t j = 0; j < dh; ++j)
                    jac(rh + p * dh + j, col) -= bb(q, j);
            }
        for (std::size_t p = 0; p < dt; ++p)
            for (std::size_t q = 0; q < dh; ++q) {
                const std::size_t col = l.backward_col[e] + p * dh + q;
                for (std::size_t j = 0; j < dt; ++j)
                    jac(rt + p * dt + j, col) += b(q, j);
                for (std::size_t i = 0; i < dh; ++i)
                    jac(rh + i * dh + q, col) -= b(i, p);
            }
    }
    return jac;
}

std::size_t moment_jacobian_rank(const QuiverRep& rep) { return rank(moment_jacobian(rep)); }

namespace {

// Rows d(W_ij) for every loop word W of length `len` (and d tr W for
// lengths 1..len), over the loop coordinates.
Matrix loop_word_rows(const QuiverRep& rep, const Layout& l) {
    const auto& loop = rep.maps().back();
    const std::size_t d = loop.forward.rows();
    const std::size_t e = rep.maps().size() - 1;
    const Matrix* letters[] = {&loop.forward, &loop.backward};
    const std::size_t first_col[] = {l.forward_col[e], l.backward_col[e]};

    std::vector<Matrix> rows;
    std::vector<int> word;
    const std::function<void(std::size_t)> visit = [&](std::size_t target) {
        if (word.size() < target) {
            for (int c = 0; c < 2; ++c) {
                word.push_back(c);
                visit(target);
                word.pop_back();
            }
            return;
        }
        const std::size_t len = word.size();
        // prefix[k] = X_{w0}..X_{w(k-1)}, suffix[k] = X_{w(k+1)}..X_{w(len-1)}
        std::vector<Matrix> prefix{Matrix::identity(d)};
        for (std::size_t k = 0; k < len; ++k)
            prefix.push_back(prefix.back() * *letters[word[k]]);
        std::vector<Matrix> suffix(len + 1, Matrix::identity(d));
        for (std::size_t k = len; k-- > 0;)
            suffix[k] = *letters[word[k]] * suffix[k + 1];

        Matrix trace_row(1, l.cols);
        const bool entries = len == d;
        Matrix entry_rows(entries ? d * d : 0, l.cols);
        for (std::size_t k = 0; k < len; ++k) {
            const Matrix& pre = prefix[k];
            const Matrix& suf = suffix[k + 1];
            const std::size_t base = first_col[word[k]];
            const Matrix loop_back = suf * pre;
            for (std::size_t p = 0; p < d; ++p)
                for (std::size_t q = 0; q < d; ++q) {
                    const std::size_t col = base + p * d + q;
                    trace_row(0, col) += loop_back(q, p);
                    if (!entries)
                        continue;
                    for (std::size_t i = 0; i < d; ++i) {
                        if (sgn(pre(i, p)) == 0)
                            continue;
                        for (std::size_t j = 0; j < d; ++j)
                            entry_rows(i * d + j, col) += pre(i, p) * suf(q, j);
                    }
                }
        }
        rows.push_back(std::move(trace_row));
        if (entries)
            rows.push_back(std::move(entry_rows));
    };
    for (std::size_t len = 1; len <= d; ++len)
        visit(len);

    Matrix out(0, l.cols);
    for (const auto& r : rows)
        out = vstack(out, r);
    return out;
}

}  // namespace

std::size_t nilcone_jacobian_rank(const QuiverRep& rep) {
    Matrix jac = moment_jacobian(rep);
    if (rep.shape().kind == QuiverKind::tadpole)
        jac = vstack(jac, loop_word_rows(rep, layout_of(rep)));
    return rank(std::move(jac));
}

JacobianReport probe_component_dim(const QuiverRep& rep, std::optional<long> predicted) {
    JacobianReport r;
    r.ambient_dim = rep.ambient_dim();
    r.moment_rank = moment_jacobian_rank(rep);
    r.jac_rank = nilcone_jacobian_rank(rep);
    r.local_dim_bound = static_cast<long>(r.ambient_dim) - static_cast<long>(r.jac_rank);
    r.predicted = predicted;
    r.certified = predicted && *predicted == r.local_dim_bound;
    return r;
}

std::map<Partition, long> commutator_type_histogram(int d, std::uint64_t trials, std::uint64_t seed) {
    if (d < 1 || trials < 1)
        throw std::invalid_argument("histogram needs d >= 1 and trials >= 1");
    std::map<Partition, long> hist;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto pair = sample_strict_upper_pair(d, seed, t);
        ++hist[jordan_type(pair.hbar * pair.h - pair.h * pair.hbar)];
    }
    return hist;
}

std::vector<KostantPartition> kostant_partitions(const DimensionVector& v) {
    const int n = v.n();
    std::vector<std::pair<int, int>> intervals;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            intervals.emplace_back(i, j);

    std::vector<KostantPartition> out;
    KostantPartition current;
    std::vector<int> remaining = v.dims;
    // intervals are ordered by first vertex, so vertex i must be used up
    // once every interval starting at i has been decided
    const std::function<void(std::size_t)> go = [&](std::size_t k) {
        if (k == intervals.size()) {
            out.push_back(current);
            return;
        }
        const auto [a, b] = intervals[k];
        int cap = remaining[static_cast<std::size_t>(a)];
        for (int x = a; x <= b; ++x)
            cap = std::min(cap, remaining[static_cast<std::size_t>(x)]);
        const bool closes = k + 1 == intervals.size() || intervals[k + 1].first != a;
        for (int m = 0; m <= cap; ++m) {
            if (closes && remaining[static_cast<std::size_t>(a)] != m)
                continue;
            for (int x = a; x <= b; ++x)
                remaining[static_cast<std::size_t>(x)] -= m;
            if (m > 0)
                current.push_back({a, b, m});
            go(k + 1);
            if (m > 0)
                current.pop_back();
            for (int x = a; x <= b; ++x)
                remaining[static_cast<std::size_t>(x)] += m;
        }
    };
    go(0);
    return out;
}

QuiverRep conormal_point(const DimensionVector& v, const KostantPartition& terms, std::uint64_t seed) {
    const int n = v.n();
    std::vector<int> filled(static_cast<std::size_t>(n), 0);
    QuiverRep rep = QuiverRep::zero(QuiverKind::line, v);
    for (const auto& t : terms)
        for (int copy = 0; copy < t.multiplicity; ++copy) {
            for (int x = t.first; x < t.last; ++x) {
                const auto from = static_cast<std::size_t>(filled[static_cast<std::size_t>(x)]);
                const auto to = static_cast<std::size_t>(filled[static_cast<std::size_t>(x) + 1]);
                rep.maps()[static_cast<std::size_t>(x)].forward(to, from) = 1;
            }
            for (int x = t.first; x <= t.last; ++x)
                ++filled[static_cast<std::size_t>(x)];
        }
    if (filled != v.dims)
        throw std::invalid_argument("interval terms do not sum to the dimension vector");

    // mu is linear in the backward maps once the forward maps are fixed
    const Matrix jac = moment_jacobian(rep);
    const Layout l = layout_of(rep);
    Matrix restricted(jac.rows(), 0);
    for (std::size_t e = 0; e < rep.maps().size(); ++e) {
        const std::size_t width = rep.maps()[e].backward.rows() * rep.maps()[e].backward.cols();
        Matrix block(jac.rows(), width);
        for (std::size_t i = 0; i < jac.rows(); ++i)
            for (std::size_t c = 0; c < width; ++c)
                block(i, c) = jac(i, l.backward_col[e] + c);
        restricted = hstack(restricted, block);
    }
    const Matrix fiber = nullspace(restricted);

    // wide range: the degenerate locus is a proper subvariety of the fiber
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<long> coeff(-1000000, 1000000);
    Matrix y(fiber.rows(), 1);
    for (std::size_t c = 0; c < fiber.cols(); ++c) {
        const Rational w = coeff(gen);
        for (std::size_t i = 0; i < fiber.rows(); ++i)
            y(i, 0) += w * fiber(i, c);
    }
    std::size_t k = 0;
    for (auto& m : rep.maps())
        for (std::size_t i = 0; i < m.backward.rows(); ++i)
            for (std::size_t j = 0; j < m.backward.cols(); ++j)
                m.backward(i, j) = y(k++, 0);
    return rep;
}

Multipartition stratum_of(const QuiverRep& rep) {
    std::vector<Partition> types;
    for (const auto& a : vertex_operators(rep))
        types.push_back(jordan_type(a));
    return Multipartition(std::move(types));
}

}  // namespace nilcone
