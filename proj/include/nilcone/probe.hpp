#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "nilcone/partition.hpp"
#include "nilcone/quiver_rep.hpp"
#include "nilcone/rational_matrix.hpp"

namespace nilcone {

// Differential of mu at rep. Columns follow the coordinate order of
// M_{Gamma,v}: edge by edge, B_h row-major then B_hbar row-major. Rows are
// the entries of mu_1, ..., mu_n, row-major.
Matrix moment_jacobian(const QuiverRep& rep);
std::size_t moment_jacobian_rank(const QuiverRep& rep);

// dmu stacked with the differentials of equations that hold on the whole
// nilpotent cone of the tadpole: every entry of every loop word of length
// v_n and the trace of every loop word of length 1..v_n. On the line quiver
// this is just the rank of dmu.
std::size_t nilcone_jacobian_rank(const QuiverRep& rep);

struct JacobianReport {
    std::size_t ambient_dim = 0;
    std::size_t moment_rank = 0;
    std::size_t jac_rank = 0;  // rank used for the bound
    long local_dim_bound = 0;
    std::optional<long> predicted;
    bool certified = false;  // bound == predicted
};

JacobianReport probe_component_dim(const QuiverRep& rep, std::optional<long> predicted = std::nullopt);

// Jordan types of [hbar, h] over sampled strictly upper pairs.
std::map<Partition, long> commutator_type_histogram(int d, std::uint64_t trials, std::uint64_t seed);

// An interval [first, last] of vertices (0-based) with a multiplicity.
struct IntervalTerm {
    int first = 0;
    int last = 0;
    int multiplicity = 0;

    friend bool operator==(const IntervalTerm&, const IntervalTerm&) = default;
};
using KostantPartition = std::vector<IntervalTerm>;

// All ways of writing v as a sum of positive roots of A_n. Its size is kostant(v).
std::vector<KostantPartition> kostant_partitions(const DimensionVector& v);

// Direct sum of interval modules on the forward arrows, with the backward
// arrows a seeded random element of the linear space {y : mu(x, y) = 0}.
// For generic y this is a generic point of the component of N_{A_n,v}
// attached to the orbit of x.
QuiverRep conormal_point(const DimensionVector& v, const KostantPartition& terms, std::uint64_t seed);

// Jordan types of the vertex operators; requires every operator to be nilpotent.
Multipartition stratum_of(const QuiverRep& rep);

}  // namespace nilcone
