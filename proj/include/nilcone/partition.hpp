#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace nilcone {

// A weakly decreasing sequence of positive integers. The empty sequence is
// the unique partition of 0.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    // (1^d): a single column of height d.
    static Partition column(int d);

    const std::vector<int>& parts() const noexcept { return parts_; }
    int size() const noexcept { return size_; }
    int length() const noexcept { return static_cast<int>(parts_.size()); }
    bool empty() const noexcept { return parts_.empty(); }
    // Width of the Young diagram; 0 for the empty partition.
    int largest() const noexcept { return parts_.empty() ? 0 : parts_.front(); }
    // i-th part, zero past the end.
    int part(std::size_t i) const noexcept { return i < parts_.size() ? parts_[i] : 0; }
    bool is_column() const noexcept { return largest() <= 1; }

    // "3,1,1"; empty string for the empty partition.
    std::string to_string() const;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

private:
    std::vector<int> parts_;
    int size_ = 0;
};

struct DimensionVector {
    std::vector<int> dims;

    DimensionVector() = default;
    explicit DimensionVector(std::vector<int> d);
    DimensionVector(std::initializer_list<int> d) : DimensionVector(std::vector<int>(d)) {}

    int n() const noexcept { return static_cast<int>(dims.size()); }
    int operator[](std::size_t i) const { return dims.at(i); }
    int back() const { return dims.back(); }
    // sum of v_i v_{i+1}
    long edge_product_sum() const;
    std::string to_string() const;

    friend bool operator==(const DimensionVector&, const DimensionVector&) = default;
};

struct Multipartition {
    std::vector<Partition> entries;

    Multipartition() = default;
    explicit Multipartition(std::vector<Partition> e) : entries(std::move(e)) {}
    Multipartition(std::initializer_list<Partition> e) : entries(e) {}

    int n() const noexcept { return static_cast<int>(entries.size()); }
    const Partition& operator[](std::size_t i) const { return entries.at(i); }
    DimensionVector dims() const;
    // "(1);(2,1);(1)"
    std::string to_string() const;

    friend bool operator==(const Multipartition&, const Multipartition&) = default;
    friend auto operator<=>(const Multipartition& a, const Multipartition& b) {
        return a.entries <=> b.entries;
    }
};

enum class Side { left, right };

// Links part `left` of the first partition to part `right` of the second.
// `start` records which space the string module begins in; it only matters
// when the two parts are equal (otherwise the longer side must start).
struct Match {
    int left = 0;
    int right = 0;
    Side start = Side::left;

    friend bool operator==(const Match&, const Match&) = default;
    friend auto operator<=>(const Match&, const Match&) = default;
};

struct ProperPairing {
    std::vector<Match> matches;

    friend bool operator==(const ProperPairing&, const ProperPairing&) = default;
};

Partition transpose(const Partition& lambda);

// t(lambda): drop the first column.
Partition truncate_first_column(const Partition& lambda);

// Does the diagram of `outer` contain the diagram of `inner`?
bool contains(const Partition& outer, const Partition& inner);

// Dominance at equal size, total size otherwise. Unordered pairs of equal
// size compare as std::partial_ordering::unordered.
std::partial_ordering dominance_order(const Partition& lambda, const Partition& mu);
bool dominance_geq(const Partition& lambda, const Partition& mu);

bool has_proper_pairing(const Partition& lambda, const Partition& mu);

bool is_proper_pairing(const Partition& lambda, const Partition& mu, const ProperPairing& pairing);

// All proper pairings up to interchange of equal parts, every match with
// Side::left. Empty iff has_proper_pairing is false.
std::vector<ProperPairing> enumerate_proper_pairings(const Partition& lambda, const Partition& mu);

// For each group of equal-valued matches, every split into left- and
// right-starting strings. The all-left assignment comes first.
std::vector<ProperPairing> orientation_variants(const Partition& lambda, const Partition& mu,
                                                const ProperPairing& pairing);

// Lexicographically descending.
const std::vector<Partition>& partitions_of(int d);

// A_v(first, last). Throws std::invalid_argument on a size mismatch.
std::vector<Multipartition> enumerate_admissible(const DimensionVector& v, const Partition& first,
                                                 const Partition& last);

bool is_admissible(const Multipartition& big_lambda);

// dim of the nilpotent orbit of Jordan type lambda.
long orbit_dim(const Partition& lambda);

// X_lambda(U) = {} iff the diagram is wider than (d+1)/2.
bool xlambda_is_empty(const Partition& lambda);

// Text forms used on the command line and in cache keys:
//   partition        "3,1,1"   (empty string is the empty partition)
//   multipartition   "(1);(2,1);(1)"
//   dimension vector "1,2,1"
// All throw std::invalid_argument on malformed input.
Partition parse_partition(std::string_view text);
Multipartition parse_multipartition(std::string_view text);
DimensionVector parse_dimension_vector(std::string_view text);

}  // namespace nilcone
