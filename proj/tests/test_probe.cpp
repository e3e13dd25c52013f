#include <doctest.h>

#include "nilcone/census.hpp"
#include "nilcone/probe.hpp"
#include "random_util.hpp"

using namespace nilcone;

namespace {

Matrix scalar(long x) { return Matrix{{x}}; }

QuiverRep line2(long b, long bbar) {
    return QuiverRep({QuiverKind::line, 2}, {1, 1}, {{scalar(b), scalar(bbar)}});
}

QuiverRep tadpole_13() {
    const Multipartition strata{{1}, {2, 1}};
    const auto loop = loop_pair_search(3, {2, 1}, 1000, 0);
    REQUIRE(loop.has_value());
    return build_Tn_point(strata, pairing_combination(edge_pairing_choices(strata), 0), *loop);
}

std::vector<Rational> flatten(const QuiverRep& rep) {
    std::vector<Rational> out;
    for (const auto& m : rep.maps())
        for (const Matrix* x : {&m.forward, &m.backward})
            for (std::size_t i = 0; i < x->rows(); ++i)
                for (std::size_t j = 0; j < x->cols(); ++j)
                    out.push_back((*x)(i, j));
    return out;
}

std::vector<DimensionVector> vectors(int n, int lo, int hi) {
    std::vector<DimensionVector> out;
    std::vector<int> v(static_cast<std::size_t>(n), lo);
    while (true) {
        out.emplace_back(v);
        std::size_t i = 0;
        while (i < v.size() && v[i] == hi)
            v[i++] = lo;
        if (i == v.size())
            return out;
        ++v[i];
    }
}

}  // namespace

TEST_CASE("moment jacobian examples") {
    CHECK(moment_jacobian_rank(QuiverRep::zero(QuiverKind::tadpole, {2, 3})) == 0);
    CHECK(moment_jacobian_rank(line2(1, 0)) == 1);
    const auto t = tadpole_13();
    const auto j = moment_jacobian(t);
    CHECK(j.rows() == 10);
    CHECK(j.cols() == 24);
}

TEST_CASE("moment jacobian is the symmetric difference quotient") {
    // mu(B + D) - mu(B - D) = 2 dmu_B(D) exactly, since mu is quadratic
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 12; ++trial) {
        const QuiverKind kind = trial % 2 ? QuiverKind::tadpole : QuiverKind::line;
        const DimensionVector v{1 + trial % 2, 2, 1 + trial % 3};
        auto b = QuiverRep::zero(kind, v);
        auto d = QuiverRep::zero(kind, v);
        for (std::size_t e = 0; e < b.maps().size(); ++e)
            for (auto* rep : {&b, &d}) {
                auto& m = rep->maps()[e];
                m.forward = testutil::random_matrix(m.forward.rows(), m.forward.cols(), gen);
                m.backward = testutil::random_matrix(m.backward.rows(), m.backward.cols(), gen);
            }
        auto plus = b, minus = b;
        for (std::size_t e = 0; e < b.maps().size(); ++e) {
            plus.maps()[e].forward += d.maps()[e].forward;
            plus.maps()[e].backward += d.maps()[e].backward;
            minus.maps()[e].forward -= d.maps()[e].forward;
            minus.maps()[e].backward -= d.maps()[e].backward;
        }
        const Matrix jac = moment_jacobian(b);
        const auto dv = flatten(d);
        Matrix col(dv.size(), 1);
        for (std::size_t i = 0; i < dv.size(); ++i)
            col(i, 0) = dv[i];
        const Matrix predicted = jac * col;
        const auto mp = moment_map(plus);
        const auto mm = moment_map(minus);
        std::size_t row = 0;
        for (std::size_t vtx = 0; vtx < mp.size(); ++vtx) {
            const Matrix diff = mp[vtx] - mm[vtx];
            for (std::size_t i = 0; i < diff.rows(); ++i)
                for (std::size_t k = 0; k < diff.cols(); ++k, ++row)
                    CHECK(diff(i, k) == 2 * predicted(row, 0));
        }
    }
}

TEST_CASE("probe examples") {
    const auto origin = probe_component_dim(line2(0, 0), 1);
    CHECK(origin.ambient_dim == 2);
    CHECK(origin.jac_rank == 0);
    CHECK(origin.local_dim_bound == 2);
    CHECK_FALSE(origin.certified);

    const auto generic = probe_component_dim(line2(1, 0), 1);
    CHECK(generic.local_dim_bound == 1);
    CHECK(generic.certified);

    const auto t = probe_component_dim(tadpole_13(), 10);
    CHECK(t.ambient_dim == 24);
    CHECK(t.local_dim_bound == 10);
    CHECK(t.certified);
    // dmu alone leaves the loop-word directions free
    CHECK(static_cast<long>(t.ambient_dim - t.moment_rank) == 16);

    const auto none = probe_component_dim(line2(1, 0));
    CHECK_FALSE(none.predicted.has_value());
    CHECK_FALSE(none.certified);
}

TEST_CASE("jacobian rank is invariant under base change") {
    std::mt19937_64 gen(8);
    const Multipartition strata{{1}, {2, 1}, {2, 2}};
    const auto loop = loop_pair_search(4, {2, 2}, 1000, 0);
    REQUIRE(loop.has_value());
    const auto choices = edge_pairing_choices(strata);
    for (std::size_t i = 0; i < std::min<std::size_t>(pairing_combination_count(choices), 3); ++i) {
        const auto rep = build_Tn_point(strata, pairing_combination(choices, i), *loop);
        const auto moved = testutil::conjugate(rep, gen);
        CHECK(moment_jacobian_rank(rep) == moment_jacobian_rank(moved));
        CHECK(nilcone_jacobian_rank(rep) == nilcone_jacobian_rank(moved));
        const auto r = probe_component_dim(rep);
        CHECK(r.moment_rank <= std::min<std::size_t>(r.ambient_dim, 1 + 9 + 16));
    }
    for (const auto& v : {DimensionVector{2, 3}, DimensionVector{1, 2, 2}}) {
        for (const auto& kp : kostant_partitions(v)) {
            const auto rep = conormal_point(v, kp, 4);
            CHECK(moment_jacobian_rank(rep) == moment_jacobian_rank(testutil::conjugate(rep, gen)));
        }
    }
}

TEST_CASE("commutator histogram") {
    const auto d1 = commutator_type_histogram(1, 50, 0);
    CHECK(d1 == std::map<Partition, long>{{{1}, 50}});
    const auto d2 = commutator_type_histogram(2, 50, 0);
    CHECK(d2 == std::map<Partition, long>{{{1, 1}, 50}});

    const auto d4 = commutator_type_histogram(4, 2000, 0);
    CHECK(d4.count({3, 1}) == 0);
    CHECK(d4.count({4}) == 0);
    auto mode = std::max_element(d4.begin(), d4.end(), [](auto& a, auto& b) { return a.second < b.second; });
    CHECK(mode->first == Partition({2, 2}));
    CHECK(commutator_type_histogram(4, 2000, 0) == d4);

    for (int d = 1; d <= 6; ++d)
        for (std::uint64_t seed : {1u, 2u})
            for (const auto& [lambda, n] : commutator_type_histogram(d, 300, seed))
                CHECK_FALSE(xlambda_is_empty(lambda));
    CHECK_THROWS_AS(commutator_type_histogram(0, 10, 0), std::invalid_argument);
}

TEST_CASE("kostant partitions") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& v : vectors(n, 0, 3)) {
            const auto kps = kostant_partitions(v);
            CHECK(kps.size() == kostant(v));
            for (const auto& kp : kps) {
                std::vector<int> sum(static_cast<std::size_t>(n), 0);
                for (const auto& t : kp) {
                    CHECK(t.multiplicity > 0);
                    for (int x = t.first; x <= t.last; ++x)
                        sum[static_cast<std::size_t>(x)] += t.multiplicity;
                }
                CHECK(sum == v.dims);
            }
        }
}

TEST_CASE("conormal points are generic points of the components") {
    ChiTable table;
    for (int n = 1; n <= 3; ++n)
        for (const auto& v : vectors(n, 1, 3)) {
            std::map<Multipartition, Count> tally;
            for (const auto& kp : kostant_partitions(v)) {
                const auto rep = conormal_point(v, kp, 12);
                REQUIRE(moment_map_vanishes(rep));
                REQUIRE(is_nilpotent_rep(rep, NilpotencyMode::path));
                const auto r = probe_component_dim(rep, v.edge_product_sum());
                CHECK_MESSAGE(r.certified, v.to_string() << " bound " << r.local_dim_bound);
                ++tally[stratum_of(rep)];
            }
            // each Jordan stratum carries chi(Lambda) of the components
            const auto census = census_An(v, table);
            for (const auto& s : census.strata)
                CHECK_MESSAGE(tally[s.stratum] == s.chi, v.to_string() << " " << s.stratum.to_string());
        }
    CHECK_THROWS_AS(conormal_point({1, 2}, {{0, 1, 1}}, 0), std::invalid_argument);
}

TEST_CASE("top stratum points of eligible tadpoles") {
    ChiTable table;
    for (const auto& v : {DimensionVector{1}, DimensionVector{2}, DimensionVector{1, 3}, DimensionVector{2, 3},
                          DimensionVector{3, 3}, DimensionVector{2, 4}}) {
        REQUIRE(top_stratum_eligible(v));
        const auto top = top_stratum_components(v, table);
        const auto loop = loop_pair_search(v.back(), top.lambda, 2000, 0);
        REQUIRE(loop.has_value());
        bool attained = false;
        for (const auto& strata : enumerate_admissible(v, Partition::column(v[0]), top.lambda)) {
            if (chi_multipartition(strata, table) == 0)
                continue;
            const auto choices = edge_pairing_choices(strata);
            for (std::size_t i = 0; i < pairing_combination_count(choices); ++i) {
                const auto rep = build_Tn_point(strata, pairing_combination(choices, i), *loop);
                const auto r = probe_component_dim(rep, top.dim);
                CHECK_MESSAGE(r.local_dim_bound >= top.dim, v.to_string() << " " << strata.to_string());
                attained = attained || r.certified;
            }
        }
        CHECK_MESSAGE(attained, v.to_string());
    }
}
