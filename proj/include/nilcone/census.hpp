#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilcone/partition.hpp"

namespace nilcone {

using Count = std::uint64_t;

// Kostant partition function of A_n: the number of multisets of positive
// roots e_i + ... + e_j summing to v.
Count kostant(const DimensionVector& v);

// Solver failure in the chi recursion: no nonnegative integral solution, or
// an equation that does not determine its unknown.
class ChiSolveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The recursion re-entered a pair that is still being solved.
class ChiCycleError : public ChiSolveError {
public:
    using ChiSolveError::ChiSolveError;
};

// Memo of chi values keyed by the ordered pair (lambda, mu). Safe to share
// between threads; writes of the same key always carry the same value.
class ChiTable {
public:
    std::optional<Count> lookup(const Partition& lambda, const Partition& mu) const;
    void store(const Partition& lambda, const Partition& mu, Count value);
    std::size_t size() const;
    std::map<std::pair<Partition, Partition>, Count> snapshot() const;

    // JSON object {"3,1|2,1": 2, ...}. A missing file loads as empty.
    void load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    static std::string key(const Partition& lambda, const Partition& mu);

private:
    mutable std::mutex mutex_;
    std::map<std::pair<Partition, Partition>, Count> memo_;
};

// Number of irreducible components of the stratum H_{lambda,mu}, solved
// from the Kostant identity on the line quiver whose maximal stratum
// contains (lambda, mu) at the junction.
Count chi(const Partition& lambda, const Partition& mu, ChiTable& table);

Count chi_multipartition(const Multipartition& big_lambda, ChiTable& table);

struct StratumCount {
    Multipartition stratum;
    Count chi = 0;
};

struct AnCensus {
    Count count = 0;
    long dim = 0;
    std::vector<StratumCount> strata;
    Count strata_total = 0;  // sum of chi over strata; equals count
};

AnCensus census_An(const DimensionVector& v, ChiTable& table);

struct PsiEntry {
    Count count = 0;
    long dim = 0;

    friend bool operator==(const PsiEntry&, const PsiEntry&) = default;
};

// Known values of psi(lambda) = #components of X_lambda, with their common
// dimension. Holds the two families that are established: (1^d) and the
// balanced two-row partition. Anything else must be inserted explicitly.
class PsiOracle {
public:
    static PsiOracle known_families() { return PsiOracle(true); }
    static PsiOracle empty() { return PsiOracle(false); }

    std::optional<PsiEntry> lookup(const Partition& lambda) const;
    void insert(const Partition& lambda, PsiEntry entry);

private:
    explicit PsiOracle(bool families) : families_(families) {}
    bool families_;
    std::map<Partition, PsiEntry> extra_;
};

struct CensusRecord {
    Multipartition stratum;
    Count chi = 0;
    std::optional<Count> psi;
    // sum v_i v_{i+1} - orbit_dim(lambda^n)/2
    long base_dim = 0;
    std::optional<long> x_dim;

    bool resolved() const { return psi.has_value(); }
    std::optional<Count> count() const;
    std::optional<long> dim() const;
};

// Upper-bound census of the Jordan strata of the tadpole nilpotent cone.
std::vector<CensusRecord> census_Tn_strata(const DimensionVector& v, const PsiOracle& psi,
                                           ChiTable& table);

struct CountDim {
    Count count = 0;
    long dim = 0;
};

// v_n in {1, 2}: the cone is N_{A_n,v} x X(V_n). Throws std::invalid_argument otherwise.
CountDim small_loop_census(const DimensionVector& v);

struct TopStratum {
    Partition lambda;
    Count count = 0;
    long dim = 0;
    long codim = 0;
};

// Requires v_i >= 2i with v_n = 2n, or v_i >= 2i - 1 with v_n = 2n - 1.
bool top_stratum_eligible(const DimensionVector& v);
TopStratum top_stratum_components(const DimensionVector& v, ChiTable& table);

}  // namespace nilcone
