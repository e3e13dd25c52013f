#include "nilcone/quiver_rep.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace nilcone {

std::vector<Edge> QuiverShape::edges() const {
    std::vector<Edge> out;
    for (int i = 0; i + 1 < n; ++i)
        out.push_back({i, i + 1});
    if (kind == QuiverKind::tadpole)
        out.push_back({n - 1, n - 1});
    return out;
}

std::size_t QuiverShape::edge_count() const {
    return static_cast<std::size_t>(n - 1) + (kind == QuiverKind::tadpole ? 1 : 0);
}

QuiverRep::QuiverRep(QuiverShape shape, DimensionVector v, std::vector<EdgeMaps> maps)
    : shape_(shape), v_(std::move(v)), maps_(std::move(maps)) {
    if (shape_.n != v_.n())
        throw std::invalid_argument("dimension vector length does not match the quiver");
    const auto edges = shape_.edges();
    if (edges.size() != maps_.size())
        throw std::invalid_argument("wrong number of edge maps");
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto tail = static_cast<std::size_t>(v_[static_cast<std::size_t>(edges[e].tail)]);
        const auto head = static_cast<std::size_t>(v_[static_cast<std::size_t>(edges[e].head)]);
        const auto& m = maps_[e];
        if (m.forward.rows() != head || m.forward.cols() != tail || m.backward.rows() != tail ||
            m.backward.cols() != head)
            throw std::invalid_argument("edge " + std::to_string(e + 1) + " maps have the wrong shape");
    }
}

QuiverRep QuiverRep::zero(QuiverKind kind, const DimensionVector& v) {
    QuiverShape shape{kind, v.n()};
    std::vector<EdgeMaps> maps;
    for (const auto& e : shape.edges()) {
        const auto tail = static_cast<std::size_t>(v[static_cast<std::size_t>(e.tail)]);
        const auto head = static_cast<std::size_t>(v[static_cast<std::size_t>(e.head)]);
        maps.push_back({Matrix(head, tail), Matrix(tail, head)});
    }
    return QuiverRep(shape, v, std::move(maps));
}

std::size_t QuiverRep::ambient_dim() const {
    std::size_t total = 0;
    for (const auto& e : shape_.edges())
        total += 2 * static_cast<std::size_t>(v_[static_cast<std::size_t>(e.tail)]) *
                 static_cast<std::size_t>(v_[static_cast<std::size_t>(e.head)]);
    return total;
}

int QuiverRep::total_dim() const {
    int s = 0;
    for (int d : v_.dims)
        s += d;
    return s;
}

std::vector<Matrix> moment_map(const QuiverRep& rep) {
    std::vector<Matrix> mu;
    for (int d : rep.dims().dims)
        mu.emplace_back(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    const auto edges = rep.shape().edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto& m = rep.maps()[e];
        mu[static_cast<std::size_t>(edges[e].tail)] += m.backward * m.forward;
        mu[static_cast<std::size_t>(edges[e].head)] -= m.forward * m.backward;
    }
    return mu;
}

bool moment_map_vanishes(const QuiverRep& rep) {
    for (const auto& m : moment_map(rep))
        if (!m.is_zero())
            return false;
    return true;
}

bool is_nilpotent_set(std::span<const Matrix> ops) {
    if (ops.empty())
        return true;
    const std::size_t d = ops.front().rows();
    for (const auto& x : ops)
        if (x.rows() != d || x.cols() != d)
            throw std::invalid_argument("nilpotency test needs square matrices of one size");
    // V_{k+1} = {w : X w in V_k for all X}; V_k is stored as an annihilator
    Matrix annihilator = Matrix::identity(d);
    std::size_t dim = 0;
    for (std::size_t step = 0; step <= d; ++step) {
        if (dim == d)
            return true;
        Matrix stacked(0, d);
        for (const auto& x : ops)
            stacked = vstack(stacked, annihilator * x);
        const Matrix next = nullspace(stacked);
        if (next.cols() == dim)
            return false;
        dim = next.cols();
        annihilator = nullspace(next.transposed()).transposed();
    }
    return dim == d;
}

namespace {

struct Arrow {
    int tail;
    int head;
    const Matrix* map;
};

std::vector<Arrow> arrows(const QuiverRep& rep) {
    std::vector<Arrow> out;
    const auto edges = rep.shape().edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        out.push_back({edges[e].tail, edges[e].head, &rep.maps()[e].forward});
        out.push_back({edges[e].head, edges[e].tail, &rep.maps()[e].backward});
    }
    return out;
}

bool path_nilpotent(const QuiverRep& rep) {
    const auto arr = arrows(rep);
    const auto n = static_cast<std::size_t>(rep.shape().n);
    // images[j]: span of the images of all paths of the current length ending at j
    std::vector<Matrix> images;
    for (int d : rep.dims().dims)
        images.push_back(Matrix::identity(static_cast<std::size_t>(d)));
    const std::size_t bound = static_cast<std::size_t>(rep.total_dim()) * arr.size();
    for (std::size_t len = 0; len <= bound; ++len) {
        bool all_zero = true;
        for (const auto& w : images)
            all_zero = all_zero && w.cols() == 0;
        if (all_zero)
            return true;
        std::vector<Matrix> next;
        bool stable = true;
        for (std::size_t j = 0; j < n; ++j) {
            Matrix span(static_cast<std::size_t>(rep.dims()[j]), 0);
            for (const auto& a : arr)
                if (static_cast<std::size_t>(a.head) == j)
                    span = hstack(span, *a.map * images[static_cast<std::size_t>(a.tail)]);
            next.push_back(column_space(span));
            stable = stable && next.back().cols() == images[j].cols();
        }
        // the spans only shrink; once they stop they never reach zero
        if (stable)
            return false;
        images = std::move(next);
    }
    return std::all_of(images.begin(), images.end(), [](const Matrix& w) { return w.cols() == 0; });
}

}  // namespace

bool is_nilpotent_rep(const QuiverRep& rep, NilpotencyMode mode) {
    if (mode == NilpotencyMode::path)
        return path_nilpotent(rep);
    if (!moment_map_vanishes(rep))
        throw std::domain_error("local nilpotency test requires mu(B) = 0");
    const int n = rep.shape().n;
    std::vector<Matrix> ops;
    if (n >= 2) {
        const auto& m = rep.maps()[static_cast<std::size_t>(n - 2)];
        // reversed arrow into the last vertex: omega = -1
        ops.push_back(-(m.forward * m.backward));
    }
    if (rep.shape().kind == QuiverKind::tadpole) {
        const auto& loop = rep.maps().back();
        ops.push_back(loop.forward);
        ops.push_back(loop.backward);
    }
    return is_nilpotent_set(ops);
}

Partition jordan_type(const Matrix& a) {
    if (!a.square())
        throw std::invalid_argument("jordan_type needs a square matrix");
    const std::size_t d = a.rows();
    std::vector<int> kernel_jumps;
    std::size_t prev = 0;
    Matrix power = Matrix::identity(d);
    for (std::size_t i = 1; prev < d; ++i) {
        if (i > d)
            throw std::domain_error("matrix is not nilpotent");
        power = power * a;
        const std::size_t kernel = d - rank(power);
        if (kernel == prev)
            throw std::domain_error("matrix is not nilpotent");
        kernel_jumps.push_back(static_cast<int>(kernel - prev));
        prev = kernel;
    }
    return transpose(Partition(kernel_jumps));
}

Matrix canonical_jordan(const Partition& lambda) {
    const auto d = static_cast<std::size_t>(lambda.size());
    Matrix j(d, d);
    std::size_t offset = 0;
    for (int p : lambda.parts()) {
        for (int k = 0; k + 1 < p; ++k)
            j(offset + static_cast<std::size_t>(k) + 1, offset + static_cast<std::size_t>(k)) = 1;
        offset += static_cast<std::size_t>(p);
    }
    return j;
}

Matrix jordan_basis(const Matrix& a) {
    const Partition lambda = jordan_type(a);
    const std::size_t d = a.rows();
    const auto height = static_cast<std::size_t>(lambda.largest());
    // kernels[j] spans ker a^j
    std::vector<Matrix> kernels{Matrix(d, 0)};
    Matrix power = Matrix::identity(d);
    for (std::size_t j = 1; j <= height; ++j) {
        power = power * a;
        kernels.push_back(nullspace(power));
    }
    // covered[j]: chain vectors already sitting at level j
    std::vector<Matrix> covered(height + 1, Matrix(d, 0));
    std::vector<Matrix> chains;
    for (std::size_t j = height; j >= 1; --j) {
        Matrix spanned = hstack(kernels[j - 1], covered[j]);
        std::size_t r = rank(spanned);
        for (std::size_t c = 0; c < kernels[j].cols(); ++c) {
            Matrix u(d, 1);
            for (std::size_t i = 0; i < d; ++i)
                u(i, 0) = kernels[j](i, c);
            Matrix trial = hstack(spanned, u);
            const std::size_t r2 = rank(trial);
            if (r2 == r)
                continue;
            spanned = std::move(trial);
            r = r2;
            Matrix chain = u;
            Matrix cur = u;
            for (std::size_t k = 1; k < j; ++k) {
                cur = a * cur;
                chain = hstack(chain, cur);
                covered[j - k] = hstack(covered[j - k], cur);
            }
            chains.push_back(std::move(chain));
        }
    }
    Matrix p(d, 0);
    for (const auto& c : chains)
        p = hstack(p, c);
    return p;
}

HPoint build_H_point(const Partition& lambda, const Partition& mu, const ProperPairing& pairing) {
    if (!is_proper_pairing(lambda, mu, pairing))
        throw std::invalid_argument("not a proper pairing between (" + lambda.to_string() + ") and (" +
                                    mu.to_string() + ")");
    const auto d1 = static_cast<std::size_t>(lambda.size());
    const auto d2 = static_cast<std::size_t>(mu.size());
    std::vector<std::size_t> off1{0};
    for (int p : lambda.parts())
        off1.push_back(off1.back() + static_cast<std::size_t>(p));
    std::vector<std::size_t> off2{0};
    for (int p : mu.parts())
        off2.push_back(off2.back() + static_cast<std::size_t>(p));

    HPoint pt{Matrix(d2, d1), Matrix(d1, d2)};
    for (const auto& m : pairing.matches) {
        const auto p = static_cast<std::size_t>(m.left);
        const auto q = static_cast<std::size_t>(m.right);
        const auto a = static_cast<std::size_t>(lambda.part(p));
        const auto b = static_cast<std::size_t>(mu.part(q));
        const std::size_t x = off1[p];
        const std::size_t y = off2[q];
        const bool left_start = a > b || (a == b && m.start == Side::left);
        if (left_start) {
            // x_0 -> y_0 -> x_1 -> y_1 -> ...
            for (std::size_t j = 0; j < a && j < b; ++j)
                pt.h(y + j, x + j) = 1;
            for (std::size_t j = 0; j < b && j + 1 < a; ++j)
                pt.hbar(x + j + 1, y + j) = 1;
        } else {
            // y_0 -> x_0 -> y_1 -> x_1 -> ...
            for (std::size_t j = 0; j < b && j < a; ++j)
                pt.hbar(x + j, y + j) = 1;
            for (std::size_t j = 0; j < a && j + 1 < b; ++j)
                pt.h(y + j + 1, x + j) = 1;
        }
    }
    return pt;
}

std::vector<std::vector<ProperPairing>> edge_pairing_choices(const Multipartition& strata) {
    std::vector<std::vector<ProperPairing>> out;
    for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(strata.n()); ++i) {
        std::vector<ProperPairing> edge;
        for (const auto& p : enumerate_proper_pairings(strata[i], strata[i + 1]))
            for (auto& variant : orientation_variants(strata[i], strata[i + 1], p))
                edge.push_back(std::move(variant));
        out.push_back(std::move(edge));
    }
    return out;
}

std::size_t pairing_combination_count(const std::vector<std::vector<ProperPairing>>& choices) {
    std::size_t total = 1;
    for (const auto& c : choices) {
        if (c.empty())
            return 0;
        if (total > std::numeric_limits<std::size_t>::max() / c.size())
            return std::numeric_limits<std::size_t>::max();
        total *= c.size();
    }
    return total;
}

std::vector<ProperPairing> pairing_combination(const std::vector<std::vector<ProperPairing>>& choices,
                                               std::size_t index) {
    if (index >= pairing_combination_count(choices))
        throw std::out_of_range("pairing index " + std::to_string(index) + " out of range");
    std::vector<ProperPairing> pick;
    for (const auto& c : choices) {
        pick.push_back(c[index % c.size()]);
        index /= c.size();
    }
    return pick;
}

namespace {

std::vector<EdgeMaps> line_maps(const Multipartition& strata, std::span<const ProperPairing> pairings) {
    const int n = strata.n();
    if (n < 1)
        throw std::invalid_argument("empty multipartition");
    if (pairings.size() != static_cast<std::size_t>(n - 1))
        throw std::invalid_argument("need one pairing per edge");
    if (!strata[0].is_column())
        throw std::invalid_argument("first vertex must carry a one-column partition");
    std::vector<EdgeMaps> maps;
    for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(n); ++i) {
        auto pt = build_H_point(strata[i], strata[i + 1], pairings[i]);
        maps.push_back({std::move(pt.h), std::move(pt.hbar)});
    }
    return maps;
}

}  // namespace

QuiverRep build_An_point(const Multipartition& strata, std::span<const ProperPairing> pairings) {
    if (strata.n() >= 1 && !strata[static_cast<std::size_t>(strata.n() - 1)].is_column())
        throw std::invalid_argument("last vertex of A_n must carry a one-column partition");
    auto maps = line_maps(strata, pairings);
    return QuiverRep({QuiverKind::line, strata.n()}, strata.dims(), std::move(maps));
}

QuiverRep build_Tn_point(const Multipartition& strata, std::span<const ProperPairing> pairings,
                         const LoopPair& loop) {
    auto maps = line_maps(strata, pairings);
    const Partition& last = strata[static_cast<std::size_t>(strata.n() - 1)];
    const auto d = static_cast<std::size_t>(last.size());
    if (loop.h.rows() != d || loop.h.cols() != d || loop.hbar.rows() != d || loop.hbar.cols() != d)
        throw std::invalid_argument("loop pair has the wrong size");
    const Matrix pair[] = {loop.h, loop.hbar};
    if (!is_nilpotent_set(pair))
        throw std::invalid_argument("loop pair is not jointly nilpotent");
    const Matrix comm = loop.hbar * loop.h - loop.h * loop.hbar;
    if (jordan_type(comm) != last)
        throw std::invalid_argument("loop commutator has Jordan type (" + jordan_type(comm).to_string() +
                                    "), expected (" + last.to_string() + ")");
    const Matrix p = jordan_basis(comm);
    const Matrix p_inv = inverse(p);
    maps.push_back({p_inv * loop.h * p, p_inv * loop.hbar * p});
    return QuiverRep({QuiverKind::tadpole, strata.n()}, strata.dims(), std::move(maps));
}

LoopPair sample_strict_upper_pair(int d, std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    std::mt19937_64 gen(seq);
    std::uniform_int_distribution<int> entry(-2, 2);
    const auto n = static_cast<std::size_t>(d);
    LoopPair out{Matrix(n, n), Matrix(n, n)};
    for (Matrix* m : {&out.h, &out.hbar})
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                (*m)(i, j) = entry(gen);
    return out;
}

std::optional<LoopPair> loop_pair_search(int d, const Partition& lambda, std::uint64_t trials,
                                         std::uint64_t seed) {
    if (d < 1 || lambda.size() != d)
        throw std::invalid_argument("loop_pair_search: partition size must equal d >= 1");
    const auto n = static_cast<std::size_t>(d);
    if (lambda.is_column()) {
        Matrix shift(n, n);
        for (std::size_t i = 0; i + 1 < n; ++i)
            shift(i, i + 1) = 1;
        return LoopPair{std::move(shift), Matrix(n, n)};
    }
    for (std::uint64_t t = 0; t < trials; ++t) {
        auto pair = sample_strict_upper_pair(d, seed, t);
        if (jordan_type(pair.hbar * pair.h - pair.h * pair.hbar) == lambda)
            return pair;
    }
    return std::nullopt;
}

std::vector<Matrix> vertex_operators(const QuiverRep& rep) {
    const int n = rep.shape().n;
    std::vector<Matrix> ops;
    for (int i = 0; i + 1 < n; ++i) {
        const auto& m = rep.maps()[static_cast<std::size_t>(i)];
        ops.push_back(m.backward * m.forward);
    }
    if (rep.shape().kind == QuiverKind::tadpole) {
        const auto& loop = rep.maps().back();
        ops.push_back(commutator(loop.backward, loop.forward));
    } else if (n >= 2) {
        const auto& m = rep.maps()[static_cast<std::size_t>(n - 2)];
        ops.push_back(m.forward * m.backward);
    } else {
        const auto d = static_cast<std::size_t>(rep.dims()[0]);
        ops.emplace_back(d, d);
    }
    return ops;
}

VerifyReport verify_point(const QuiverRep& rep, const Multipartition& strata) {
    VerifyReport report;
    if (strata.n() != rep.shape().n || !(strata.dims() == rep.dims())) {
        report.shape_ok = false;
        return report;
    }
    report.moment_zero = moment_map_vanishes(rep);
    report.nilpotent_path = is_nilpotent_rep(rep, NilpotencyMode::path);
    if (report.moment_zero)
        report.nilpotent_local = is_nilpotent_rep(rep, NilpotencyMode::local);
    const auto ops = vertex_operators(rep);
    for (std::size_t i = 0; i < ops.size(); ++i) {
        try {
            report.vertex_types.push_back(jordan_type(ops[i]));
        } catch (const std::domain_error&) {
            report.vertex_types.push_back(std::nullopt);
        }
        if (!report.first_mismatch && report.vertex_types.back() != strata[i])
            report.first_mismatch = static_cast<int>(i);
    }
    report.pass = report.moment_zero && report.nilpotent_path && report.nilpotent_local.value_or(false) &&
                  !report.first_mismatch;
    return report;
}

}  // namespace nilcone
