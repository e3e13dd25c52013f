#include "nilcone/census.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>

#include "json.hpp"

namespace nilcone {

namespace {

Count add_checked(Count a, Count b) {
    Count r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("component count overflow");
    return r;
}

Count mul_checked(Count a, Count b) {
    Count r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("component count overflow");
    return r;
}

// Kostant memo shared by all callers; the lock is never held across recursion.
std::mutex kostant_mutex;
std::map<std::vector<int>, Count> kostant_memo;

Count kostant_rec(std::vector<int> v) {
    // leading/trailing zeros do not matter
    while (!v.empty() && v.front() == 0)
        v.erase(v.begin());
    while (!v.empty() && v.back() == 0)
        v.pop_back();
    if (v.empty())
        return 1;
    // a zero in the middle splits the quiver
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (v[i] == 0)
            return mul_checked(kostant_rec({v.begin(), v.begin() + static_cast<long>(i)}),
                               kostant_rec({v.begin() + static_cast<long>(i) + 1, v.end()}));
    {
        std::lock_guard lock(kostant_mutex);
        if (auto it = kostant_memo.find(v); it != kostant_memo.end())
            return it->second;
    }
    // Roots starting at vertex 1 cover a non-increasing number c_p of copies
    // at each vertex p, with c_1 = v_1 and c_p <= v_p. The rest is a smaller
    // instance on vertices 2..n.
    const std::size_t n = v.size();
    std::vector<int> rest(v.begin() + 1, v.end());
    Count total = 0;
    auto choose = [&](auto& self, std::size_t p, int prev) -> void {
        if (p == n) {
            total = add_checked(total, kostant_rec(rest));
            return;
        }
        const int hi = std::min(prev, v[p]);
        for (int c = 0; c <= hi; ++c) {
            rest[p - 1] = v[p] - c;
            self(self, p + 1, c);
        }
        rest[p - 1] = v[p];
    };
    choose(choose, 1, v[0]);
    std::lock_guard lock(kostant_mutex);
    kostant_memo.emplace(v, total);
    return total;
}

}  // namespace

Count kostant(const DimensionVector& v) { return kostant_rec(v.dims); }

std::optional<Count> ChiTable::lookup(const Partition& lambda, const Partition& mu) const {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find({lambda, mu}); it != memo_.end())
        return it->second;
    return std::nullopt;
}

void ChiTable::store(const Partition& lambda, const Partition& mu, Count value) {
    std::lock_guard lock(mutex_);
    memo_[{lambda, mu}] = value;
}

std::size_t ChiTable::size() const {
    std::lock_guard lock(mutex_);
    return memo_.size();
}

std::map<std::pair<Partition, Partition>, Count> ChiTable::snapshot() const {
    std::lock_guard lock(mutex_);
    return memo_;
}

std::string ChiTable::key(const Partition& lambda, const Partition& mu) {
    return lambda.to_string() + '|' + mu.to_string();
}

void ChiTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        return;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("corrupt chi cache " + path.string() + ": " + e.what());
    }
    if (!j.is_object())
        throw std::runtime_error("chi cache " + path.string() + " is not a JSON object");
    std::lock_guard lock(mutex_);
    for (const auto& [k, value] : j.items()) {
        const auto bar = k.find('|');
        if (bar == std::string::npos || !value.is_number_unsigned())
            throw std::runtime_error("bad chi cache entry: " + k);
        memo_[{parse_partition(std::string_view(k).substr(0, bar)),
               parse_partition(std::string_view(k).substr(bar + 1))}] = value.get<Count>();
    }
}

void ChiTable::save(const std::filesystem::path& path) const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [pair, value] : snapshot())
        j[key(pair.first, pair.second)] = value;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    // write-then-rename so a crash never leaves a truncated cache
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp);
        if (!out)
            throw std::runtime_error("cannot write chi cache " + tmp.string());
        out << j.dump(1) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

namespace {

class ChiSolver {
public:
    explicit ChiSolver(ChiTable& table) : table_(table) {}

    Count solve(const Partition& lambda, const Partition& mu) {
        if (auto known = table_.lookup(lambda, mu))
            return *known;
        if (!has_proper_pairing(lambda, mu)) {
            table_.store(lambda, mu, 0);
            return 0;
        }
        // H(0, U) with U of one column is a single point
        if (lambda.empty() || mu.empty()) {
            table_.store(lambda, mu, 1);
            return 1;
        }
        const std::pair key{lambda, mu};
        if (!active_.insert(key).second)
            throw ChiCycleError("chi recursion re-entered (" + lambda.to_string() + "), (" +
                                mu.to_string() + ")");

        const Count value = solve_equation(lambda, mu);
        active_.erase(key);
        table_.store(lambda, mu, value);
        return value;
    }

private:
    // Line quiver with n = lambda_1 + mu_1 vertices whose maximal stratum is
    // (t^{lambda_1-1} lambda, ..., t lambda, lambda, mu, t mu, ..., t^{mu_1-1} mu).
    Count solve_equation(const Partition& lambda, const Partition& mu) {
        std::vector<int> dims;
        std::vector<Partition> left{lambda};
        while (left.back().largest() > 1)
            left.push_back(truncate_first_column(left.back()));
        for (auto it = left.rbegin(); it != left.rend(); ++it)
            dims.push_back(it->size());
        for (Partition p = mu; !p.empty(); p = truncate_first_column(p))
            dims.push_back(p.size());
        const DimensionVector v(dims);
        const Count target = kostant(v);

        // poly[k]: sum over strata where the unknown occurs k times of the
        // product of the remaining (known) factors
        std::vector<Count> poly(1, 0);
        for (const auto& stratum : enumerate_admissible(v, Partition::column(v[0]), Partition::column(v.back()))) {
            std::size_t degree = 0;
            Count coef = 1;
            for (int i = 0; i + 1 < stratum.n() && coef != 0; ++i) {
                const auto& a = stratum[static_cast<std::size_t>(i)];
                const auto& b = stratum[static_cast<std::size_t>(i + 1)];
                // (mu, lambda) is the same variety with the two spaces swapped
                if ((a == lambda && b == mu) || (a == mu && b == lambda))
                    ++degree;
                else
                    coef = mul_checked(coef, solve(a, b));
            }
            if (coef == 0)
                continue;
            if (poly.size() <= degree)
                poly.resize(degree + 1, 0);
            poly[degree] = add_checked(poly[degree], coef);
        }
        return solve_monotone(poly, target, lambda, mu);
    }

    // The unique x >= 0 with sum poly[k] x^k = target.
    static Count solve_monotone(const std::vector<Count>& poly, Count target, const Partition& lambda,
                                const Partition& mu) {
        const auto where = " for (" + lambda.to_string() + "), (" + mu.to_string() + ")";
        if (std::all_of(poly.begin() + 1, poly.end(), [](Count c) { return c == 0; }))
            throw ChiSolveError("Kostant identity does not involve the unknown" + where);
        auto eval = [&](Count x) -> Count {  // saturating
            Count acc = 0;
            Count xk = 1;
            constexpr Count cap = std::numeric_limits<Count>::max();
            for (std::size_t k = 0; k < poly.size(); ++k) {
                Count term = 0;
                if (poly[k] != 0 && __builtin_mul_overflow(poly[k], xk, &term))
                    return cap;
                if (__builtin_add_overflow(acc, term, &acc))
                    return cap;
                if (k + 1 < poly.size() && __builtin_mul_overflow(xk, x, &xk))
                    xk = cap;
            }
            return acc;
        };
        if (poly[0] > target)
            throw ChiSolveError("negative solution" + where);
        Count lo = 0;
        Count hi = target;  // some nonconstant coefficient is >= 1, so P(x) >= x
        while (lo < hi) {
            const Count mid = lo + (hi - lo) / 2;
            if (eval(mid) < target)
                lo = mid + 1;
            else
                hi = mid;
        }
        if (eval(lo) != target)
            throw ChiSolveError("non-integral solution" + where);
        return lo;
    }

    ChiTable& table_;
    std::set<std::pair<Partition, Partition>> active_;
};

}  // namespace

Count chi(const Partition& lambda, const Partition& mu, ChiTable& table) {
    return ChiSolver(table).solve(lambda, mu);
}

Count chi_multipartition(const Multipartition& big_lambda, ChiTable& table) {
    Count product = 1;
    for (int i = 0; i + 1 < big_lambda.n(); ++i) {
        product = mul_checked(product, chi(big_lambda[static_cast<std::size_t>(i)],
                                           big_lambda[static_cast<std::size_t>(i + 1)], table));
        if (product == 0)
            break;
    }
    return product;
}

AnCensus census_An(const DimensionVector& v, ChiTable& table) {
    AnCensus out;
    out.count = kostant(v);
    out.dim = v.edge_product_sum();
    for (auto& stratum : enumerate_admissible(v, Partition::column(v[0]), Partition::column(v.back()))) {
        const Count c = chi_multipartition(stratum, table);
        out.strata_total = add_checked(out.strata_total, c);
        out.strata.push_back({std::move(stratum), c});
    }
    return out;
}

std::optional<PsiEntry> PsiOracle::lookup(const Partition& lambda) const {
    if (auto it = extra_.find(lambda); it != extra_.end())
        return it->second;
    if (!families_)
        return std::nullopt;
    const long d = lambda.size();
    if (d == 0)
        return PsiEntry{1, 0};
    // commuting nilpotent pairs: irreducible of dimension d^2 - 1
    if (lambda.is_column())
        return PsiEntry{1, d * d - 1};
    // balanced two rows: open dense in X(U), which is irreducible
    if (lambda == Partition{static_cast<int>((d + 1) / 2), static_cast<int>(d / 2)})
        return PsiEntry{1, 3 * d * (d - 1) / 2};
    return std::nullopt;
}

void PsiOracle::insert(const Partition& lambda, PsiEntry entry) { extra_[lambda] = entry; }

std::optional<Count> CensusRecord::count() const {
    if (!psi)
        return std::nullopt;
    return mul_checked(chi, *psi);
}

std::optional<long> CensusRecord::dim() const {
    if (!x_dim)
        return std::nullopt;
    return base_dim + *x_dim;
}

std::vector<CensusRecord> census_Tn_strata(const DimensionVector& v, const PsiOracle& psi,
                                           ChiTable& table) {
    std::vector<CensusRecord> out;
    const Partition first = Partition::column(v[0]);
    for (const auto& last : partitions_of(v.back())) {
        if (xlambda_is_empty(last))
            continue;
        for (auto& stratum : enumerate_admissible(v, first, last)) {
            const Count c = chi_multipartition(stratum, table);
            if (c == 0)
                continue;
            CensusRecord rec;
            rec.stratum = std::move(stratum);
            rec.chi = c;
            rec.base_dim = v.edge_product_sum() - orbit_dim(last) / 2;
            if (auto entry = psi.lookup(last)) {
                rec.psi = entry->count;
                rec.x_dim = entry->dim;
            }
            out.push_back(std::move(rec));
        }
    }
    return out;
}

CountDim small_loop_census(const DimensionVector& v) {
    const int last = v.back();
    if (last != 1 && last != 2)
        throw std::invalid_argument("small-loop census needs v_n in {1, 2}, got " + std::to_string(last));
    return {kostant(v), v.edge_product_sum() + static_cast<long>(last) * last - 1};
}

bool top_stratum_eligible(const DimensionVector& v) {
    const int n = v.n();
    const int last = v.back();
    int shift = 0;
    if (last == 2 * n)
        shift = 0;
    else if (last == 2 * n - 1)
        shift = 1;
    else
        return false;
    for (int i = 1; i <= n; ++i)
        if (v[static_cast<std::size_t>(i - 1)] < 2 * i - shift)
            return false;
    return true;
}

TopStratum top_stratum_components(const DimensionVector& v, ChiTable& table) {
    if (!top_stratum_eligible(v))
        throw std::invalid_argument("dimension vector " + v.to_string() +
                                    " does not satisfy the top-stratum hypotheses");
    const int n = v.n();
    const int last = v.back();
    std::vector<int> rows{(last + 1) / 2};
    if (last / 2 > 0)
        rows.push_back(last / 2);
    TopStratum out;
    out.lambda = Partition(rows);
    for (const auto& stratum : enumerate_admissible(v, Partition::column(v[0]), out.lambda))
        out.count = add_checked(out.count, chi_multipartition(stratum, table));
    out.dim = v.edge_product_sum() + static_cast<long>(last) * last - n;
    const long product_family_dim = v.edge_product_sum() + static_cast<long>(last) * last - 1;
    out.codim = product_family_dim - out.dim;
    return out;
}

}  // namespace nilcone
