#pragma once

#include "mvsol/mvs.hpp"
#include "mvsol/rigidity.hpp"

#include <json.hpp>

#include <initializer_list>
#include <string>

namespace mvsol {

// Ordered JSON keeps key order deterministic so reports are byte-identical
// across runs.
using Json = nlohmann::ordered_json;

// Parses text, mapping parse errors to ConfigError with line/column
// diagnostics; `origin` names the source (file name or "<config>").
Json parse_json(const std::string& text, const std::string& origin);
Json load_json_file(const std::string& path);

// Strict-schema helper: every present key must be listed (required or
// optional) and every required key must be present.
void expect_fields(const Json& j, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional, const std::string& context);

double number_field(const Json& j, const char* key, const std::string& context);

// Interface slopes serialize as numbers, with the infinite endpoints written
// as the strings "-inf" / "inf".
Json sigma_to_json(double sigma);
double sigma_from_json(const Json& j, const std::string& context);

Json to_json(const PrimitiveState& s);
PrimitiveState primitive_state_from_json(const Json& j, const std::string& context = "state");

Json to_json(const ConservativeState& c);
ConservativeState conservative_state_from_json(const Json& j,
                                               const std::string& context = "state");

Json to_json(const ExtendedState& z);
ExtendedState extended_state_from_json(const Json& j, const std::string& context = "state");

Json to_json(const Wedge& w);
Wedge wedge_from_json(const Json& j, const std::string& context = "wedge");

Json to_json(const FanSolution& f);
FanSolution fan_from_json(const Json& j, const std::string& context = "fan");

Json to_json(const RiemannData& d);
RiemannData riemann_data_from_json(const Json& j, const std::string& context = "riemann");

Json to_json(const WildParameters& w);
WildParameters wild_parameters_from_json(const Json& j,
                                         const std::string& context = "parameters");

std::string status_to_string(RegionStatus s);
RegionStatus status_from_string(const std::string& s, const std::string& context);

Json to_json(const Atom& a);
Atom atom_from_json(const Json& j, const std::string& context = "atom");

Json to_json(const MeasureRegion& r);
MeasureRegion measure_region_from_json(const Json& j, const std::string& context = "region");

Json to_json(const AtomicYoungMeasure& nu);
AtomicYoungMeasure measure_from_json(const Json& j, const std::string& context = "measure");

Json to_json(const TestFunction& phi);
TestFunction test_function_from_json(const Json& j, const std::string& context = "test function");

} // namespace mvsol
