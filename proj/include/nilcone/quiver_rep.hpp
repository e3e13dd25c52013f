#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nilcone/partition.hpp"
#include "nilcone/rational_matrix.hpp"

namespace nilcone {

enum class QuiverKind { line, tadpole };

// Arrow h_i runs from vertex i to vertex i+1 (0-based here); the tadpole
// adds a loop at the last vertex.
struct Edge {
    int tail = 0;
    int head = 0;
    bool is_loop() const noexcept { return tail == head; }
};

struct QuiverShape {
    QuiverKind kind = QuiverKind::line;
    int n = 1;

    std::vector<Edge> edges() const;
    std::size_t edge_count() const;
};

// B_h : V_tail -> V_head and B_hbar : V_head -> V_tail.
struct EdgeMaps {
    Matrix forward;
    Matrix backward;
};

class QuiverRep {
public:
    // Validates matrix shapes against v.
    QuiverRep(QuiverShape shape, DimensionVector v, std::vector<EdgeMaps> maps);
    static QuiverRep zero(QuiverKind kind, const DimensionVector& v);

    const QuiverShape& shape() const noexcept { return shape_; }
    const DimensionVector& dims() const noexcept { return v_; }
    const std::vector<EdgeMaps>& maps() const noexcept { return maps_; }
    std::vector<EdgeMaps>& maps() noexcept { return maps_; }

    // Sum over arrows (both orientations) of dim Hom(V_tail, V_head).
    std::size_t ambient_dim() const;
    int total_dim() const;

private:
    QuiverShape shape_;
    DimensionVector v_;
    std::vector<EdgeMaps> maps_;
};

// mu(B)_i = sum_{h : in(h) = i} omega(h) B_hbar B_h, with omega = +1 on the
// arrows h_i and -1 on their reverses.
std::vector<Matrix> moment_map(const QuiverRep& rep);
bool moment_map_vanishes(const QuiverRep& rep);

// Do all sufficiently long words in `ops` vanish? Joint kernel filtration.
// Throws std::invalid_argument if the matrices are not all d x d.
bool is_nilpotent_set(std::span<const Matrix> ops);

enum class NilpotencyMode {
    path,   // every composition along a path of length N vanishes
    local,  // joint nilpotency of the operators at the last vertex; needs mu = 0
};

// Local mode throws std::domain_error when mu(B) != 0.
bool is_nilpotent_rep(const QuiverRep& rep, NilpotencyMode mode);

// Jordan type from ranks of powers. Throws std::domain_error if `a` is not nilpotent.
Partition jordan_type(const Matrix& a);

// Nilpotent matrix with Jordan type lambda: blocks in order, each block the
// shift e_k -> e_{k+1}.
Matrix canonical_jordan(const Partition& lambda);

// Invertible P with P^{-1} a P = canonical_jordan(jordan_type(a)).
Matrix jordan_basis(const Matrix& a);

struct HPoint {
    Matrix h;     // U1 -> U2
    Matrix hbar;  // U2 -> U1
};

// String-module point of H_{lambda,mu}: hbar*h = J_lambda and h*hbar = J_mu
// exactly. Throws std::invalid_argument for an improper pairing.
HPoint build_H_point(const Partition& lambda, const Partition& mu, const ProperPairing& pairing);

// Per edge, every proper pairing with all of its orientation variants.
std::vector<std::vector<ProperPairing>> edge_pairing_choices(const Multipartition& strata);
// Number of ways to pick one pairing per edge (saturates at SIZE_MAX).
std::size_t pairing_combination_count(const std::vector<std::vector<ProperPairing>>& choices);
// The index-th pick, edge 1 varying fastest. Throws std::out_of_range.
std::vector<ProperPairing> pairing_combination(const std::vector<std::vector<ProperPairing>>& choices,
                                               std::size_t index);

// Point of N_{A_n} in the stratum Lambda; one pairing per edge.
QuiverRep build_An_point(const Multipartition& strata, std::span<const ProperPairing> pairings);

struct LoopPair {
    Matrix h;
    Matrix hbar;
};

// Point of N_{T_n} in the stratum Lambda. The loop pair is conjugated so
// that [hbar, h] equals the Jordan form produced by the line part.
QuiverRep build_Tn_point(const Multipartition& strata, std::span<const ProperPairing> pairings,
                         const LoopPair& loop);

// Strictly upper triangular pair with entries in {-2..2}, reproducible from
// (seed, trial) alone.
LoopPair sample_strict_upper_pair(int d, std::uint64_t seed, std::uint64_t trial);

// First sampled pair (smallest trial index) whose commutator has Jordan type
// lambda. (1^d) is answered without sampling.
std::optional<LoopPair> loop_pair_search(int d, const Partition& lambda, std::uint64_t trials,
                                         std::uint64_t seed);

struct VerifyReport {
    bool shape_ok = true;
    bool moment_zero = false;
    bool nilpotent_path = false;
    std::optional<bool> nilpotent_local;  // only evaluated on mu^{-1}(0)
    // Jordan type of the vertex operator, absent when it is not nilpotent
    std::vector<std::optional<Partition>> vertex_types;
    std::optional<int> first_mismatch;  // 0-based vertex
    bool pass = false;
};

// Vertex operators: B_hbar_i B_h_i for i < n; at the last vertex
// B_h_{n-1} B_hbar_{n-1} on the line and [B_hbar_loop, B_loop] on the tadpole.
std::vector<Matrix> vertex_operators(const QuiverRep& rep);

VerifyReport verify_point(const QuiverRep& rep, const Multipartition& strata);

}  // namespace nilcone
