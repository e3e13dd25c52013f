#include "nilcone/serialization.hpp"

#include <stdexcept>

namespace nilcone {

namespace {

Json integer_to_json(const mpz_class& z) {
    if (z.fits_slong_p())
        return Json(z.get_si());
    return Json(z.get_str());
}

mpz_class integer_from_json(const Json& j) {
    if (j.is_number_integer())
        return mpz_class(std::to_string(j.get<long long>()));
    if (j.is_string())
        return mpz_class(j.get<std::string>());
    throw std::invalid_argument("expected an integer");
}

Json matrix_to_json(const Matrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out.push_back(rational_to_json(m(i, j)));
    return out;
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows * cols)
        throw std::invalid_argument("matrix has " + std::to_string(j.size()) + " entries, expected " +
                                    std::to_string(rows * cols));
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t c = 0; c < cols; ++c)
            m(i, c) = rational_from_json(j[i * cols + c]);
    return m;
}

std::string unknown(const Partition& p) { return "unknown(" + p.to_string() + ")"; }

}  // namespace

Json rational_to_json(const Rational& q) {
    return Json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())});
}

Rational rational_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("rational must be [numerator, denominator]");
    const mpz_class den = integer_from_json(j[1]);
    if (den == 0)
        throw std::invalid_argument("zero denominator");
    Rational q(integer_from_json(j[0]), den);
    q.canonicalize();
    return q;
}

Json partition_to_json(const Partition& p) { return Json(p.parts()); }

Partition partition_from_json(const Json& j) {
    if (!j.is_array())
        throw std::invalid_argument("partition must be an array");
    return Partition(j.get<std::vector<int>>());
}

Json multipartition_to_json(const Multipartition& m) {
    Json out = Json::array();
    for (const auto& p : m.entries)
        out.push_back(partition_to_json(p));
    return out;
}

Multipartition multipartition_from_json(const Json& j) {
    if (!j.is_array())
        throw std::invalid_argument("multipartition must be an array");
    std::vector<Partition> parts;
    for (const auto& e : j)
        parts.push_back(partition_from_json(e));
    return Multipartition(std::move(parts));
}

Json rep_to_json(const QuiverRep& rep) {
    Json maps = Json::array();
    for (std::size_t e = 0; e < rep.maps().size(); ++e)
        maps.push_back({{"edge", e + 1},
                        {"B", matrix_to_json(rep.maps()[e].forward)},
                        {"Bbar", matrix_to_json(rep.maps()[e].backward)}});
    return {{"kind", rep.shape().kind == QuiverKind::line ? "A" : "T"}, {"v", rep.dims().dims}, {"maps", maps}};
}

QuiverRep rep_from_json(const Json& j) {
    try {
        const std::string kind_name = j.at("kind").get<std::string>();
        QuiverKind kind;
        if (kind_name == "A")
            kind = QuiverKind::line;
        else if (kind_name == "T")
            kind = QuiverKind::tadpole;
        else
            throw std::invalid_argument("kind must be \"A\" or \"T\"");
        const DimensionVector v(j.at("v").get<std::vector<int>>());
        const QuiverShape shape{kind, v.n()};
        const auto edges = shape.edges();
        const Json& maps = j.at("maps");
        if (!maps.is_array() || maps.size() != edges.size())
            throw std::invalid_argument("expected " + std::to_string(edges.size()) + " edge maps");
        std::vector<EdgeMaps> out(edges.size());
        std::vector<bool> seen(edges.size(), false);
        for (const auto& m : maps) {
            const auto idx = m.at("edge").get<long>();
            if (idx < 1 || static_cast<std::size_t>(idx) > edges.size() || seen[static_cast<std::size_t>(idx - 1)])
                throw std::invalid_argument("bad or repeated edge index " + std::to_string(idx));
            const auto e = static_cast<std::size_t>(idx - 1);
            seen[e] = true;
            const auto tail = static_cast<std::size_t>(v[static_cast<std::size_t>(edges[e].tail)]);
            const auto head = static_cast<std::size_t>(v[static_cast<std::size_t>(edges[e].head)]);
            out[e] = {matrix_from_json(m.at("B"), head, tail), matrix_from_json(m.at("Bbar"), tail, head)};
        }
        return QuiverRep(shape, v, std::move(out));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed representation: ") + e.what());
    }
}

Json verify_report_to_json(const VerifyReport& r) {
    Json types = Json::array();
    for (const auto& t : r.vertex_types)
        types.push_back(t ? partition_to_json(*t) : Json(nullptr));
    return {{"shape_ok", r.shape_ok},
            {"moment_zero", r.moment_zero},
            {"nilpotent_path", r.nilpotent_path},
            {"nilpotent_local", r.nilpotent_local ? Json(*r.nilpotent_local) : Json(nullptr)},
            {"vertex_types", types},
            // 1-based, like the edge numbering
            {"first_mismatch", r.first_mismatch ? Json(*r.first_mismatch + 1) : Json(nullptr)},
            {"pass", r.pass}};
}

Json jacobian_report_to_json(const JacobianReport& r) {
    return {{"ambient_dim", r.ambient_dim},
            {"moment_rank", r.moment_rank},
            {"jac_rank", r.jac_rank},
            {"local_dim_bound", r.local_dim_bound},
            {"predicted_dim", r.predicted ? Json(*r.predicted) : Json(nullptr)},
            {"certified", r.certified}};
}

Json histogram_to_json(const std::map<Partition, long>& hist) {
    Json out = Json::array();
    for (const auto& [p, n] : hist)
        out.push_back({{"lambda", partition_to_json(p)}, {"frequency", n}});
    return out;
}

Json an_census_to_json(const AnCensus& c) {
    Json strata = Json::array();
    for (const auto& s : c.strata)
        strata.push_back({{"stratum", multipartition_to_json(s.stratum)}, {"chi", s.chi}});
    return {{"count", c.count}, {"dim", c.dim}, {"strata", strata}, {"strata_total", c.strata_total}};
}

Json census_record_to_json(const CensusRecord& r) {
    const Partition& last = r.stratum[static_cast<std::size_t>(r.stratum.n() - 1)];
    const auto n = r.count();
    const auto d = r.dim();
    Json count = n ? Json(*n) : Json{{"chi", r.chi}, {"psi", unknown(last)}};
    Json dim = d ? Json(*d) : Json{{"base", r.base_dim}, {"x_dim", unknown(last)}};
    return {{"stratum", multipartition_to_json(r.stratum)}, {"count", count}, {"dim", dim}};
}

}  // namespace nilcone
