// nilcone: census, builders, verifier and probes for tadpole nilpotent cones.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nilcone/census.hpp"
#include "nilcone/partition.hpp"
#include "nilcone/probe.hpp"
#include "nilcone/quiver_rep.hpp"
#include "nilcone/serialization.hpp"

namespace fs = std::filesystem;
using namespace nilcone;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, solver = 3 };

struct Config {
    std::string cache_path;
    bool no_cache = false;
    std::string format = "table";
    std::uint64_t seed = 0;
    std::uint64_t trials = 1000;
    std::string out;

    bool json() const { return format == "json"; }
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

fs::path default_cache_path() {
    if (const char* env = std::getenv("NILCONE_CACHE"); env && *env)
        return env;
    if (const char* xdg = std::getenv("XDG_DATA_HOME"); xdg && *xdg)
        return fs::path(xdg) / "nilcone" / "chi_cache.json";
    if (const char* home = std::getenv("HOME"); home && *home)
        return fs::path(home) / ".local" / "share" / "nilcone" / "chi_cache.json";
    return "chi_cache.json";
}

// Loads the persistent chi table on construction and writes it back on
// success.
class CachedTable {
public:
    explicit CachedTable(const Config& cfg) {
        if (cfg.no_cache)
            return;
        path_ = cfg.cache_path.empty() ? default_cache_path() : fs::path(cfg.cache_path);
        try {
            table_.load(*path_);
        } catch (const std::exception& e) {
            std::cerr << "warning: ignoring unreadable chi cache " << *path_ << ": " << e.what() << "\n";
        }
    }
    ChiTable& table() { return table_; }
    void save() {
        if (!path_)
            return;
        try {
            if (path_->has_parent_path())
                fs::create_directories(path_->parent_path());
            table_.save(*path_);
        } catch (const std::exception& e) {
            std::cerr << "warning: could not write chi cache " << *path_ << ": " << e.what() << "\n";
        }
    }

private:
    ChiTable table_;
    std::optional<fs::path> path_;
};

class Output {
public:
    explicit Output(const Config& cfg) {
        if (!cfg.out.empty()) {
            file_.open(cfg.out);
            if (!file_)
                throw UsageError("cannot open " + cfg.out + " for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

template <typename F>
auto parsed(F&& f, const std::string& what) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw UsageError("bad " + what + ": " + e.what());
    }
}

std::string paren(const Partition& p) { return "(" + p.to_string() + ")"; }

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

QuiverRep read_rep(const std::string& path) {
    const Json j = read_json_file(path);
    try {
        return rep_from_json(j);
    } catch (const std::invalid_argument& e) {
        throw UsageError(path + ": " + e.what());
    }
}

// --- chi -----------------------------------------------------------------

int run_chi(const Config& cfg, const std::string& lambda_text, const std::string& mu_text) {
    const Partition lambda = parsed([&] { return parse_partition(lambda_text); }, "partition");
    const Partition mu = parsed([&] { return parse_partition(mu_text); }, "partition");
    CachedTable cache(cfg);
    const Count value = chi(lambda, mu, cache.table());
    cache.save();
    Output out(cfg);
    if (cfg.json())
        out.stream() << Json{{"lambda", partition_to_json(lambda)}, {"mu", partition_to_json(mu)}, {"chi", value}}
                     << "\n";
    else
        out.stream() << value << "\n";
    return ok;
}

// --- census --------------------------------------------------------------

void print_count_dim(std::ostream& os, const std::string& v, Count count, long dim) {
    os << "v      " << v << "\n"
       << "count  " << count << "\n"
       << "dim    " << dim << "\n";
}

int run_census(const Config& cfg, const std::string& kind, const std::string& v_text) {
    const DimensionVector v = parsed([&] { return parse_dimension_vector(v_text); }, "dimension vector");
    if (v.n() < 1)
        throw UsageError("dimension vector must be nonempty");
    Output out(cfg);
    std::ostream& os = out.stream();
    const bool small = v.back() == 1 || v.back() == 2;

    if (kind == "small-loop" || (kind == "tn" && small)) {
        const CountDim cd = parsed([&] { return small_loop_census(v); }, "dimension vector");
        if (cfg.json())
            os << Json{{"v", v.dims}, {"case", "small-loop"}, {"count", cd.count}, {"dim", cd.dim}} << "\n";
        else {
            os << "small-loop case: N_{A_n,v} x X(V_n)\n";
            print_count_dim(os, v.to_string(), cd.count, cd.dim);
        }
        return ok;
    }

    CachedTable cache(cfg);
    if (kind == "an") {
        const AnCensus c = census_An(v, cache.table());
        cache.save();
        if (cfg.json()) {
            Json j = an_census_to_json(c);
            j["v"] = v.dims;
            os << j << "\n";
            return ok;
        }
        print_count_dim(os, v.to_string(), c.count, c.dim);
        os << "\n" << std::left << std::setw(32) << "stratum" << "chi\n";
        for (const auto& s : c.strata)
            os << std::setw(32) << s.stratum.to_string() << s.chi << "\n";
        return ok;
    }
    if (kind == "tn") {
        const auto records = census_Tn_strata(v, PsiOracle::known_families(), cache.table());
        cache.save();
        if (cfg.json()) {
            Json arr = Json::array();
            for (const auto& r : records)
                arr.push_back(census_record_to_json(r));
            os << Json{{"v", v.dims}, {"strata", arr}} << "\n";
            return ok;
        }
        os << "v  " << v.to_string() << "\n\n"
           << std::left << std::setw(32) << "stratum" << std::setw(8) << "chi" << std::setw(20) << "count"
           << "dim\n";
        for (const auto& r : records) {
            const Partition& last = r.stratum[static_cast<std::size_t>(r.stratum.n() - 1)];
            const auto n = r.count();
            const auto d = r.dim();
            const std::string count = n ? std::to_string(*n) : std::to_string(r.chi) + "*unknown" + paren(last);
            const std::string dim = d ? std::to_string(*d) : std::to_string(r.base_dim) + "+unknown" + paren(last);
            os << std::setw(32) << r.stratum.to_string() << std::setw(8) << r.chi << std::setw(20) << count << dim
               << "\n";
        }
        return ok;
    }
    if (kind == "tn-top") {
        if (!top_stratum_eligible(v))
            throw UsageError("v = " + v.to_string() + " is not eligible for the top-stratum census");
        const TopStratum t = top_stratum_components(v, cache.table());
        cache.save();
        if (cfg.json())
            os << Json{{"v", v.dims},
                       {"lambda", partition_to_json(t.lambda)},
                       {"count", t.count},
                       {"dim", t.dim},
                       {"codim", t.codim}}
               << "\n";
        else {
            os << "lambda " << paren(t.lambda) << "\n";
            print_count_dim(os, v.to_string(), t.count, t.dim);
            os << "codim  " << t.codim << "\n";
        }
        return ok;
    }
    throw UsageError("unknown census kind " + kind);
}

// --- build / verify / probe ----------------------------------------------

int run_build(const Config& cfg, const std::string& kind, const std::string& v_text,
              const std::string& strata_text, std::size_t pairing_index) {
    const DimensionVector v = parsed([&] { return parse_dimension_vector(v_text); }, "dimension vector");
    const Multipartition strata = parsed([&] { return parse_multipartition(strata_text); }, "strata");
    if (!(strata.dims() == v))
        throw UsageError("strata " + strata.to_string() + " do not have dimension vector " + v.to_string());
    const auto choices = edge_pairing_choices(strata);
    const std::size_t combos = pairing_combination_count(choices);
    if (combos == 0)
        throw UsageError("strata " + strata.to_string() + " admit no proper pairing");
    if (pairing_index >= combos)
        throw UsageError("pairing index out of range (" + std::to_string(combos) + " choices)");
    const auto pairings = pairing_combination(choices, pairing_index);

    std::optional<QuiverRep> rep;
    if (kind == "an") {
        rep = parsed([&] { return build_An_point(strata, pairings); }, "strata");
    } else if (kind == "tn") {
        const Partition& last = strata[static_cast<std::size_t>(strata.n() - 1)];
        const int d = v.back();
        std::optional<LoopPair> loop;
        if (d == 0)
            loop = LoopPair{};
        else
            loop = loop_pair_search(d, last, cfg.trials, cfg.seed);
        if (!loop) {
            std::cerr << "no loop pair with commutator type " << paren(last) << " in " << cfg.trials
                      << " trials\n";
            return failed;
        }
        rep = parsed([&] { return build_Tn_point(strata, pairings, *loop); }, "strata");
    } else {
        throw UsageError("unknown quiver kind " + kind);
    }
    Output out(cfg);
    out.stream() << rep_to_json(*rep).dump(1) << "\n";
    return ok;
}

int run_verify(const Config& cfg, const std::string& file, const std::string& strata_text) {
    const QuiverRep rep = read_rep(file);
    const Multipartition strata = parsed([&] { return parse_multipartition(strata_text); }, "strata");
    const VerifyReport r = verify_point(rep, strata);
    Output out(cfg);
    std::ostream& os = out.stream();
    if (cfg.json()) {
        os << verify_report_to_json(r) << "\n";
    } else {
        auto yn = [](bool b) { return b ? "yes" : "no"; };
        os << "shape ok          " << yn(r.shape_ok) << "\n";
        if (r.shape_ok) {
            os << "mu(B) = 0         " << yn(r.moment_zero) << "\n"
               << "nilpotent (path)  " << yn(r.nilpotent_path) << "\n"
               << "nilpotent (local) " << (r.nilpotent_local ? yn(*r.nilpotent_local) : "n/a") << "\n";
            for (std::size_t i = 0; i < r.vertex_types.size(); ++i)
                os << "vertex " << i + 1 << "  " << (r.vertex_types[i] ? paren(*r.vertex_types[i]) : "not nilpotent")
                   << "  expected " << paren(strata[i]) << "\n";
            if (r.first_mismatch)
                os << "first mismatch at vertex " << *r.first_mismatch + 1 << "\n";
        }
        os << (r.pass ? "PASS" : "FAIL") << "\n";
    }
    return r.pass ? ok : failed;
}

int run_probe(const Config& cfg, const std::string& file, std::optional<long> predict) {
    const QuiverRep rep = read_rep(file);
    const JacobianReport r = probe_component_dim(rep, predict);
    Output out(cfg);
    std::ostream& os = out.stream();
    if (cfg.json()) {
        os << jacobian_report_to_json(r) << "\n";
    } else {
        os << "ambient dim      " << r.ambient_dim << "\n"
           << "rank dmu         " << r.moment_rank << "\n"
           << "rank (nilcone)   " << r.jac_rank << "\n"
           << "local dim bound  " << r.local_dim_bound << "\n";
        if (predict)
            os << "predicted        " << *predict << "\n" << (r.certified ? "certified" : "not certified") << "\n";
    }
    return !predict || r.certified ? ok : failed;
}

int run_histogram(const Config& cfg, int d) {
    if (d < 1 || cfg.trials < 1)
        throw UsageError("histogram needs d >= 1 and --trials >= 1");
    const auto hist = commutator_type_histogram(d, cfg.trials, cfg.seed);
    Output out(cfg);
    std::ostream& os = out.stream();
    if (cfg.json()) {
        os << Json{{"d", d}, {"trials", cfg.trials}, {"seed", cfg.seed}, {"histogram", histogram_to_json(hist)}}
           << "\n";
        return ok;
    }
    os << std::left << std::setw(16) << "lambda" << std::setw(12) << "frequency" << "empty X_lambda\n";
    for (const auto& [p, n] : hist)
        os << std::setw(16) << paren(p) << std::setw(12) << n << (xlambda_is_empty(p) ? "yes" : "no") << "\n";
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Components of nilpotent cones of the line and tadpole quivers"};
    app.require_subcommand(1);
    Config cfg;

    app.add_option("--cache", cfg.cache_path, "chi cache file (default: $NILCONE_CACHE or the user data dir)");
    app.add_flag("--no-cache", cfg.no_cache, "do not read or write the chi cache");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"table", "json"}));
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--trials", cfg.trials, "sampling trials");
    app.add_option("--out", cfg.out, "write the result to this file");

    std::string lambda_text, mu_text;
    auto* chi_cmd = app.add_subcommand("chi", "number of components of H_{lambda,mu}");
    chi_cmd->add_option("lambda", lambda_text, "partition, e.g. 2,1")->required();
    chi_cmd->add_option("mu", mu_text, "partition; \"\" is the empty partition")->required();
    chi_cmd->fallthrough();

    std::string census_kind, v_text;
    auto* census_cmd = app.add_subcommand("census", "component census of a nilpotent cone");
    census_cmd->add_option("kind", census_kind, "an | tn | tn-top | small-loop")
        ->required()
        ->check(CLI::IsMember({"an", "tn", "tn-top", "small-loop"}));
    census_cmd->add_option("v", v_text, "dimension vector, e.g. 1,2,3")->required();
    census_cmd->fallthrough();

    std::string build_kind, strata_text;
    std::size_t pairing_index = 0;
    auto* build_cmd = app.add_subcommand("build", "construct a point in a Jordan stratum (JSON)");
    build_cmd->add_option("kind", build_kind, "an | tn")->required()->check(CLI::IsMember({"an", "tn"}));
    build_cmd->add_option("v", v_text, "dimension vector")->required();
    build_cmd->add_option("--strata", strata_text, "multipartition, e.g. \"(1);(2);(1)\"")->required();
    build_cmd->add_option("--pairing-index", pairing_index, "which combination of edge pairings to use");
    build_cmd->fallthrough();

    std::string file;
    auto* verify_cmd = app.add_subcommand("verify", "check a representation against a stratum");
    verify_cmd->add_option("file", file, "representation JSON")->required();
    verify_cmd->add_option("--strata", strata_text, "multipartition")->required();
    verify_cmd->fallthrough();

    std::optional<long> predict;
    auto* probe_cmd = app.add_subcommand("probe", "local dimension bound from the Jacobian rank");
    probe_cmd->add_option("file", file, "representation JSON")->required();
    probe_cmd->add_option("--predict", predict, "predicted component dimension");
    probe_cmd->fallthrough();

    int hist_d = 0;
    auto* hist_cmd = app.add_subcommand("histogram", "Jordan types of commutators of strictly upper pairs");
    hist_cmd->add_option("d", hist_d, "matrix size")->required();
    hist_cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*chi_cmd)
            return run_chi(cfg, lambda_text, mu_text);
        if (*census_cmd)
            return run_census(cfg, census_kind, v_text);
        if (*build_cmd)
            return run_build(cfg, build_kind, v_text, strata_text, pairing_index);
        if (*verify_cmd)
            return run_verify(cfg, file, strata_text);
        if (*probe_cmd)
            return run_probe(cfg, file, predict);
        if (*hist_cmd)
            return run_histogram(cfg, hist_d);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const ChiSolveError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return solver;
    } catch (const std::overflow_error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return solver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return solver;
    }
    return usage;
}
