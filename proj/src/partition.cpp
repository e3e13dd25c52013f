#include "nilcone/partition.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace nilcone {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1)
            throw std::invalid_argument("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw std::invalid_argument("partition parts must be weakly decreasing");
        size_ += parts_[i];
    }
}

Partition Partition::column(int d) {
    if (d < 0)
        throw std::invalid_argument("negative partition size");
    return Partition(std::vector<int>(static_cast<std::size_t>(d), 1));
}

std::string Partition::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(parts_[i]);
    }
    return out;
}

DimensionVector::DimensionVector(std::vector<int> d) : dims(std::move(d)) {
    if (dims.empty())
        throw std::invalid_argument("dimension vector needs at least one vertex");
    for (int x : dims)
        if (x < 0)
            throw std::invalid_argument("dimension vector entries must be nonnegative");
}

long DimensionVector::edge_product_sum() const {
    long s = 0;
    for (std::size_t i = 0; i + 1 < dims.size(); ++i)
        s += static_cast<long>(dims[i]) * dims[i + 1];
    return s;
}

std::string DimensionVector::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(dims[i]);
    }
    return out;
}

DimensionVector Multipartition::dims() const {
    std::vector<int> d;
    d.reserve(entries.size());
    for (const auto& p : entries)
        d.push_back(p.size());
    return DimensionVector(std::move(d));
}

std::string Multipartition::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i)
            out += ';';
        out += '(' + entries[i].to_string() + ')';
    }
    return out;
}

Partition transpose(const Partition& lambda) {
    std::vector<int> cols(static_cast<std::size_t>(lambda.largest()), 0);
    for (int p : lambda.parts())
        for (int j = 0; j < p; ++j)
            ++cols[static_cast<std::size_t>(j)];
    return Partition(std::move(cols));
}

Partition truncate_first_column(const Partition& lambda) {
    std::vector<int> out;
    for (int p : lambda.parts())
        if (p >= 2)
            out.push_back(p - 1);
    return Partition(std::move(out));
}

bool contains(const Partition& outer, const Partition& inner) {
    if (inner.length() > outer.length())
        return false;
    for (int i = 0; i < inner.length(); ++i)
        if (inner.part(static_cast<std::size_t>(i)) > outer.part(static_cast<std::size_t>(i)))
            return false;
    return true;
}

std::partial_ordering dominance_order(const Partition& lambda, const Partition& mu) {
    if (lambda.size() != mu.size())
        return lambda.size() <=> mu.size();
    bool geq = true;
    bool leq = true;
    int a = 0;
    int b = 0;
    const auto len = static_cast<std::size_t>(std::max(lambda.length(), mu.length()));
    for (std::size_t i = 0; i < len; ++i) {
        a += lambda.part(i);
        b += mu.part(i);
        if (a < b)
            geq = false;
        if (a > b)
            leq = false;
    }
    if (geq && leq)
        return std::partial_ordering::equivalent;
    if (geq)
        return std::partial_ordering::greater;
    if (leq)
        return std::partial_ordering::less;
    return std::partial_ordering::unordered;
}

bool dominance_geq(const Partition& lambda, const Partition& mu) {
    return std::is_gteq(dominance_order(lambda, mu));
}

bool has_proper_pairing(const Partition& lambda, const Partition& mu) {
    return contains(mu, truncate_first_column(lambda)) && contains(lambda, truncate_first_column(mu));
}

bool is_proper_pairing(const Partition& lambda, const Partition& mu, const ProperPairing& pairing) {
    std::vector<bool> used_left(static_cast<std::size_t>(lambda.length()), false);
    std::vector<bool> used_right(static_cast<std::size_t>(mu.length()), false);
    for (const auto& m : pairing.matches) {
        if (m.left < 0 || m.left >= lambda.length() || m.right < 0 || m.right >= mu.length())
            return false;
        const auto l = static_cast<std::size_t>(m.left);
        const auto r = static_cast<std::size_t>(m.right);
        if (used_left[l] || used_right[r])
            return false;
        used_left[l] = used_right[r] = true;
        if (std::abs(lambda.part(l) - mu.part(r)) > 1)
            return false;
    }
    for (int i = 0; i < lambda.length(); ++i)
        if (!used_left[static_cast<std::size_t>(i)] && lambda.part(static_cast<std::size_t>(i)) >= 2)
            return false;
    for (int j = 0; j < mu.length(); ++j)
        if (!used_right[static_cast<std::size_t>(j)] && mu.part(static_cast<std::size_t>(j)) >= 2)
            return false;
    return true;
}

namespace {

// Choice for one part a of lambda: 0 = unmatched, 1 = match value a+1,
// 2 = match value a, 3 = match value a-1. Runs of equal parts take
// non-decreasing choices and always grab the first free part of mu with the
// requested value, so every value-level correspondence is produced once.
void pairing_search(const Partition& lambda, const Partition& mu, std::size_t i, int prev_choice,
                    std::vector<bool>& used, std::vector<Match>& current,
                    std::vector<ProperPairing>& out) {
    if (i == static_cast<std::size_t>(lambda.length())) {
        for (std::size_t j = 0; j < used.size(); ++j)
            if (!used[j] && mu.part(j) >= 2)
                return;
        ProperPairing p{current};
        std::sort(p.matches.begin(), p.matches.end());
        out.push_back(std::move(p));
        return;
    }
    const int a = lambda.part(i);
    const int first_choice = (i > 0 && lambda.part(i - 1) == a) ? prev_choice : 0;
    for (int choice = first_choice; choice <= 3; ++choice) {
        if (choice == 0) {
            if (a != 1)
                continue;
            pairing_search(lambda, mu, i + 1, choice, used, current, out);
            continue;
        }
        const int target = a + 2 - choice;  // 1 -> a+1, 2 -> a, 3 -> a-1
        if (target < 1)
            continue;
        for (std::size_t j = 0; j < used.size(); ++j) {
            if (used[j] || mu.part(j) != target)
                continue;
            used[j] = true;
            current.push_back({static_cast<int>(i), static_cast<int>(j), Side::left});
            pairing_search(lambda, mu, i + 1, choice, used, current, out);
            current.pop_back();
            used[j] = false;
            break;
        }
    }
}

}  // namespace

std::vector<ProperPairing> enumerate_proper_pairings(const Partition& lambda, const Partition& mu) {
    std::vector<ProperPairing> out;
    std::vector<bool> used(static_cast<std::size_t>(mu.length()), false);
    std::vector<Match> current;
    pairing_search(lambda, mu, 0, 0, used, current, out);
    return out;
}

std::vector<ProperPairing> orientation_variants(const Partition& lambda, const Partition& mu,
                                                const ProperPairing& pairing) {
    // group indices of equal-value matches by their common value
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < pairing.matches.size(); ++k) {
        const auto& m = pairing.matches[k];
        const int a = lambda.part(static_cast<std::size_t>(m.left));
        if (a == mu.part(static_cast<std::size_t>(m.right)))
            groups[a].push_back(k);
    }
    ProperPairing base = pairing;
    for (auto& m : base.matches)
        m.start = Side::left;
    std::vector<ProperPairing> out{base};
    for (const auto& [value, idx] : groups) {
        std::vector<ProperPairing> next;
        for (const auto& p : out) {
            for (std::size_t right = 0; right <= idx.size(); ++right) {
                ProperPairing q = p;
                for (std::size_t r = 0; r < right; ++r)
                    q.matches[idx[idx.size() - 1 - r]].start = Side::right;
                next.push_back(std::move(q));
            }
        }
        out = std::move(next);
    }
    return out;
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& current, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(current);
        return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        current.push_back(p);
        partitions_rec(remaining - p, p, current, out);
        current.pop_back();
    }
}

}  // namespace

const std::vector<Partition>& partitions_of(int d) {
    if (d < 0)
        throw std::invalid_argument("negative partition size");
    static std::mutex mutex;
    static std::map<int, std::vector<Partition>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(d);
    if (it == cache.end()) {
        std::vector<Partition> out;
        std::vector<int> current;
        partitions_rec(d, d, current, out);
        it = cache.emplace(d, std::move(out)).first;
    }
    return it->second;
}

std::vector<Multipartition> enumerate_admissible(const DimensionVector& v, const Partition& first,
                                                 const Partition& last) {
    const int n = v.n();
    if (first.size() != v[0] || last.size() != v.back())
        throw std::invalid_argument("first/last partitions do not match the dimension vector");
    std::vector<Multipartition> out;
    if (n == 1) {
        if (first == last)
            out.push_back(Multipartition{first});
        return out;
    }
    std::vector<const std::vector<Partition>*> levels;
    for (int i = 0; i < n; ++i)
        levels.push_back(&partitions_of(v[static_cast<std::size_t>(i)]));

    std::vector<Partition> current{first};
    auto rec = [&](auto& self, int i) -> void {
        if (i == n - 1) {
            if (has_proper_pairing(current.back(), last)) {
                current.push_back(last);
                out.emplace_back(current);
                current.pop_back();
            }
            return;
        }
        for (const auto& p : *levels[static_cast<std::size_t>(i)]) {
            if (!has_proper_pairing(current.back(), p))
                continue;
            current.push_back(p);
            self(self, i + 1);
            current.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

bool is_admissible(const Multipartition& big_lambda) {
    for (int i = 0; i + 1 < big_lambda.n(); ++i)
        if (!has_proper_pairing(big_lambda[static_cast<std::size_t>(i)],
                                big_lambda[static_cast<std::size_t>(i + 1)]))
            return false;
    return true;
}

long orbit_dim(const Partition& lambda) {
    const long d = lambda.size();
    long centralizer = 0;
    const Partition columns = transpose(lambda);
    for (int c : columns.parts())
        centralizer += static_cast<long>(c) * c;
    return d * d - centralizer;
}

bool xlambda_is_empty(const Partition& lambda) {
    // width > (d+1)/2, compared in integers
    return 2 * lambda.largest() > lambda.size() + 1;
}

}  // namespace nilcone

namespace nilcone {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    text = trim(text);
    if (text.empty())
        return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        const auto token = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
        if (token.empty())
            throw std::invalid_argument("empty entry in integer list");
        int value = 0;
        for (char c : token) {
            if (c < '0' || c > '9')
                throw std::invalid_argument("not a nonnegative integer: " + std::string(token));
            value = value * 10 + (c - '0');
            if (value > 1'000'000)
                throw std::invalid_argument("integer too large: " + std::string(token));
        }
        out.push_back(value);
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

Partition parse_partition(std::string_view text) {
    text = trim(text);
    if (text.size() >= 2 && text.front() == '(' && text.back() == ')')
        text = text.substr(1, text.size() - 2);
    return Partition(parse_int_list(text));
}

Multipartition parse_multipartition(std::string_view text) {
    std::vector<Partition> entries;
    text = trim(text);
    if (text.empty())
        throw std::invalid_argument("empty multipartition");
    std::size_t start = 0;
    while (true) {
        const auto semi = text.find(';', start);
        auto token = trim(text.substr(start, semi == std::string_view::npos ? text.npos : semi - start));
        if (token.size() < 2 || token.front() != '(' || token.back() != ')')
            throw std::invalid_argument("multipartition entries must be parenthesized: " + std::string(token));
        entries.push_back(parse_partition(token));
        if (semi == std::string_view::npos)
            break;
        start = semi + 1;
    }
    return Multipartition(std::move(entries));
}

DimensionVector parse_dimension_vector(std::string_view text) {
    return DimensionVector(parse_int_list(text));
}

}  // namespace nilcone
