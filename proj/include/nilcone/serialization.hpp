#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "nilcone/census.hpp"
#include "nilcone/partition.hpp"
#include "nilcone/probe.hpp"
#include "nilcone/quiver_rep.hpp"

namespace nilcone {

using Json = nlohmann::json;

// Rationals are [numerator, denominator]; a component that does not fit in
// int64 is written as a decimal string.
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json partition_to_json(const Partition& p);
Partition partition_from_json(const Json& j);
Json multipartition_to_json(const Multipartition& m);
Multipartition multipartition_from_json(const Json& j);

// {"kind": "A"|"T", "v": [...], "maps": [{"edge": i, "B": [...], "Bbar": [...]}]}
// with edges numbered from 1 and matrices flattened row-major.
Json rep_to_json(const QuiverRep& rep);
// Throws std::invalid_argument on malformed input.
QuiverRep rep_from_json(const Json& j);

Json verify_report_to_json(const VerifyReport& r);
Json jacobian_report_to_json(const JacobianReport& r);
Json histogram_to_json(const std::map<Partition, long>& hist);
Json an_census_to_json(const AnCensus& c);
// Unresolved psi entries are rendered as "unknown(lambda)".
Json census_record_to_json(const CensusRecord& r);

}  // namespace nilcone
