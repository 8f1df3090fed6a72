#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "shadowlab/bounds.hpp"
#include "shadowlab/extremal.hpp"
#include "shadowlab/forbidden.hpp"
#include "shadowlab/hypergraph.hpp"
#include "shadowlab/stability.hpp"

namespace shadowlab {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

Json to_json(const VertexSet& s);
Json to_json(const Hypergraph& h);
Json to_json(const Rational& q);
Json to_json(const ZValue& z);
Json to_json(const Witness& w);
Json to_json(const BoundReport& b);
Json to_json(const InequalityReport& rep);
Json to_json(const EnumStats& s);
Json to_json(const ExtremalResult& e);
Json to_json(const BoundSweepReport& b);
Json to_json(const PartitionFit& f);
Json to_json(const CoreExtraction& c);
Json to_json(const StabilityCertificate& c);

/// JSON text with every floating-point value printed with 17 significant
/// digits; non-finite values become null. Object keys keep insertion order.
std::string dump_json(const Json& j, int indent = 2);

}  // namespace shadowlab
