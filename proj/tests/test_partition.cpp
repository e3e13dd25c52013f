#include <doctest.h>

#include <set>

#include "nilcone/partition.hpp"
#include "oracles.hpp"

using namespace nilcone;

namespace {

std::vector<Partition> all_partitions_up_to(int max_size) {
    std::vector<Partition> out;
    for (int d = 0; d <= max_size; ++d)
        for (const auto& p : partitions_of(d))
            out.push_back(p);
    return out;
}

std::vector<std::pair<int, int>> value_pairs(const Partition& lambda, const Partition& mu, const ProperPairing& p) {
    std::vector<std::pair<int, int>> out;
    for (const auto& m : p.matches)
        out.emplace_back(lambda.part(static_cast<std::size_t>(m.left)), mu.part(static_cast<std::size_t>(m.right)));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("partition validation") {
    CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Partition({2, 0}), std::invalid_argument);
    CHECK(Partition().size() == 0);
    CHECK(Partition({3, 1, 1}).size() == 5);
    CHECK(Partition::column(3) == Partition({1, 1, 1}));
    CHECK(Partition::column(0).empty());
}

TEST_CASE("transpose") {
    CHECK(transpose({3, 1}) == Partition({2, 1, 1}));
    CHECK(transpose(Partition()) == Partition());
    CHECK(transpose({2, 2}) == Partition({2, 2}));
    for (const auto& p : all_partitions_up_to(12)) {
        CHECK(transpose(transpose(p)) == p);
        CHECK(transpose(p).size() == p.size());
    }
}

TEST_CASE("truncate first column") {
    CHECK(truncate_first_column({3, 2, 1}) == Partition({2, 1}));
    CHECK(truncate_first_column({1, 1, 1}) == Partition());
    CHECK(truncate_first_column({4}) == Partition({3}));
    for (const auto& p : all_partitions_up_to(12)) {
        const Partition t = truncate_first_column(p);
        CHECK(t.size() == p.size() - p.length());
        CHECK(contains(p, t));
    }
}

TEST_CASE("containment") {
    CHECK(contains({3, 2}, {2, 1}));
    CHECK_FALSE(contains({2, 2}, {3}));
    CHECK(contains({2}, Partition()));
    CHECK(contains(Partition(), Partition()));
    CHECK_FALSE(contains({1}, {1, 1}));
}

TEST_CASE("dominance") {
    CHECK(dominance_geq({2, 1}, {1, 1, 1}));
    CHECK_FALSE(dominance_geq({2, 2}, {3, 1}));
    CHECK_FALSE(dominance_geq({1, 1}, {3}));
    CHECK(dominance_geq({3}, {1, 1}));
    CHECK(dominance_order({3, 3}, {4, 1, 1}) == std::partial_ordering::unordered);
    CHECK(dominance_order({2, 1}, {2, 1}) == std::partial_ordering::equivalent);
    CHECK(dominance_order({1, 1, 1}, {2, 1}) == std::partial_ordering::less);
}

TEST_CASE("partitions_of") {
    const int counts[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
    for (int d = 0; d <= 12; ++d) {
        const auto& ps = partitions_of(d);
        CHECK(ps.size() == static_cast<std::size_t>(counts[d]));
        for (std::size_t i = 1; i < ps.size(); ++i)
            CHECK(ps[i - 1] > ps[i]);
        for (const auto& p : ps)
            CHECK(p.size() == d);
    }
    CHECK(partitions_of(0) == std::vector<Partition>{Partition()});
    CHECK(partitions_of(3) == std::vector<Partition>{{3}, {2, 1}, {1, 1, 1}});
}

TEST_CASE("proper pairing examples") {
    CHECK(has_proper_pairing({1, 1, 1}, {1, 1}));
    CHECK_FALSE(has_proper_pairing({3}, Partition()));
    CHECK(has_proper_pairing({2, 1}, {2, 2}));
    CHECK(has_proper_pairing(Partition(), {1, 1}));
    CHECK_FALSE(has_proper_pairing({3}, {1}));

    const auto single = enumerate_proper_pairings({1}, {1});
    // (1) can be matched with (1) or left unmatched
    CHECK(single.size() == 2);
    const auto twos = enumerate_proper_pairings({2}, {2});
    REQUIRE(twos.size() == 1);
    CHECK(twos[0].matches == std::vector<Match>{{0, 0, Side::left}});
}

TEST_CASE("pairing criterion equals matching existence, sizes <= 6") {
    const auto ps = all_partitions_up_to(6);
    for (const auto& a : ps)
        for (const auto& b : ps) {
            const bool brute = oracle::pairing_exists(a, b);
            CHECK_MESSAGE(has_proper_pairing(a, b) == brute, a.to_string() << " | " << b.to_string());
            CHECK(has_proper_pairing(a, b) == has_proper_pairing(b, a));
            CHECK(enumerate_proper_pairings(a, b).empty() == !brute);
        }
}

TEST_CASE("enumerated pairings match the exhaustive search up to equal parts") {
    const auto ps = all_partitions_up_to(5);
    for (const auto& a : ps)
        for (const auto& b : ps) {
            const auto expected = oracle::pairing_value_sets(a, b);
            std::set<std::vector<std::pair<int, int>>> got;
            for (const auto& p : enumerate_proper_pairings(a, b)) {
                CHECK(is_proper_pairing(a, b, p));
                CHECK_MESSAGE(got.insert(value_pairs(a, b, p)).second, "duplicate pairing");
            }
            CHECK(got == expected);
        }
}

TEST_CASE("is_proper_pairing rejects bad matchings") {
    const Partition a{2, 1}, b{2, 2};
    CHECK_FALSE(is_proper_pairing(a, b, {{{0, 0, Side::left}}}));  // second 2 of b unmatched
    CHECK(is_proper_pairing(a, b, {{{0, 0, Side::left}, {1, 1, Side::left}}}));
    CHECK_FALSE(is_proper_pairing(a, b, {{{0, 0, Side::left}, {0, 1, Side::left}}}));  // reused part
    CHECK_FALSE(is_proper_pairing({3}, {1}, {{{0, 0, Side::left}}}));
    CHECK_FALSE(is_proper_pairing({1}, {1}, {{{0, 3, Side::left}}}));
}

TEST_CASE("orientation variants only split equal-valued matches") {
    const Partition a{2, 2, 1}, b{2, 2, 1};
    for (const auto& p : enumerate_proper_pairings(a, b)) {
        const auto variants = orientation_variants(a, b, p);
        REQUIRE_FALSE(variants.empty());
        CHECK(variants.front() == p);
        std::map<int, int> equal_groups;
        for (const auto& m : p.matches) {
            const int x = a.part(static_cast<std::size_t>(m.left));
            if (x == b.part(static_cast<std::size_t>(m.right)))
                ++equal_groups[x];
        }
        std::size_t expected = 1;
        for (const auto& [value, count] : equal_groups)
            expected *= static_cast<std::size_t>(count + 1);
        CHECK(variants.size() == expected);
        for (const auto& v : variants)
            CHECK(is_proper_pairing(a, b, v));
    }
}

TEST_CASE("enumerate_admissible") {
    CHECK(enumerate_admissible({1, 1}, {1}, {1}) == std::vector<Multipartition>{{{1}, {1}}});
    // (1,1) -> (2) -> ... : the (2) cannot reach a one-column last entry of size 2
    const auto two = enumerate_admissible({2, 2}, {1, 1}, {1, 1});
    CHECK(two == std::vector<Multipartition>{{{1, 1}, {1, 1}}});
    const auto three = enumerate_admissible({1, 2, 1}, {1}, {1});
    CHECK(three == std::vector<Multipartition>{{{1}, {2}, {1}}, {{1}, {1, 1}, {1}}});
    CHECK_THROWS_AS(enumerate_admissible({1, 2}, {1, 1}, {1, 1}), std::invalid_argument);

    // filter oracle: every multipartition of v with the pairing condition
    const DimensionVector v{2, 3, 2};
    std::set<Multipartition> expected;
    for (const auto& p : partitions_of(3))
        if (has_proper_pairing({1, 1}, p) && has_proper_pairing(p, {1, 1}))
            expected.insert(Multipartition{{1, 1}, p, {1, 1}});
    const auto got = enumerate_admissible(v, {1, 1}, {1, 1});
    CHECK(std::set<Multipartition>(got.begin(), got.end()) == expected);
    for (const auto& m : got)
        CHECK(is_admissible(m));
}

TEST_CASE("orbit_dim") {
    for (int d = 0; d <= 12; ++d) {
        CHECK(orbit_dim(Partition::column(d)) == 0);
        if (d > 0)
            CHECK(orbit_dim(Partition({d})) == static_cast<long>(d) * d - d);
    }
    for (int k = 1; k <= 6; ++k)
        CHECK(orbit_dim({k, k}) == 4L * k * k - 4L * k);
    for (const auto& p : all_partitions_up_to(7)) {
        CHECK(orbit_dim(p) % 2 == 0);
        CHECK_MESSAGE(orbit_dim(p) == oracle::orbit_dim_by_rank(p), p.to_string());
    }
}

TEST_CASE("xlambda emptiness") {
    for (int d = 1; d <= 8; ++d)
        CHECK_FALSE(xlambda_is_empty(Partition::column(d)));
    CHECK(xlambda_is_empty({2}));
    CHECK_FALSE(xlambda_is_empty({2, 1}));
    CHECK(xlambda_is_empty({3, 1}));
    CHECK_FALSE(xlambda_is_empty({2, 2}));
    CHECK_FALSE(xlambda_is_empty({3, 2}));
}

TEST_CASE("parsing") {
    CHECK(parse_partition("3,1,1") == Partition({3, 1, 1}));
    CHECK(parse_partition("") == Partition());
    CHECK(parse_partition("(2,1)") == Partition({2, 1}));
    CHECK(parse_partition(" 2 , 2 ") == Partition({2, 2}));
    CHECK_THROWS_AS(parse_partition("1,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_partition("a"), std::invalid_argument);
    CHECK_THROWS_AS(parse_partition("1,,1"), std::invalid_argument);

    const Multipartition m = parse_multipartition("(1);(2,1);(1)");
    CHECK(m == Multipartition{{1}, {2, 1}, {1}});
    CHECK(m.to_string() == "(1);(2,1);(1)");
    CHECK(parse_multipartition(m.to_string()) == m);
    CHECK(m.dims() == DimensionVector{1, 3, 1});

    CHECK(parse_dimension_vector("1,2,1") == DimensionVector{1, 2, 1});
    CHECK_THROWS_AS(parse_dimension_vector("1,-2"), std::invalid_argument);
    CHECK(DimensionVector{2, 3, 4}.edge_product_sum() == 18);
}
