#include "mvsol/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace mvsol {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void parse_failure(const std::string& text, std::size_t byte,
                                const std::string& origin, const std::string& what) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    std::ostringstream msg;
    msg << origin << ": JSON parse error at line " << line << ", column " << column << ": "
        << what;
    throw ConfigError(msg.str());
}

} // namespace

Json parse_json(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        parse_failure(text, e.byte, origin, e.what());
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json(buffer.str(), path);
}

void expect_fields(const Json& j, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional, const std::string& context) {
    if (!j.is_object()) throw ConfigError(context + ": expected a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : required)
            if (item.key() == k) known = true;
        for (const char* k : optional)
            if (item.key() == k) known = true;
        if (!known) throw ConfigError(context + ": unknown field '" + item.key() + "'");
    }
    for (const char* k : required) {
        if (!j.contains(k))
            throw ConfigError(context + ": missing required field '" + std::string(k) + "'");
    }
}

double number_field(const Json& j, const char* key, const std::string& context) {
    const Json& v = j.at(key);
    if (!v.is_number())
        throw ConfigError(context + ": field '" + key + "' must be a number");
    return v.get<double>();
}

Json sigma_to_json(double sigma) {
    if (sigma == kInf) return Json("inf");
    if (sigma == -kInf) return Json("-inf");
    return Json(sigma);
}

double sigma_from_json(const Json& j, const std::string& context) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    throw ConfigError(context + ": slope must be a number or \"inf\"/\"-inf\"");
}

Json to_json(const PrimitiveState& s) {
    return Json{{"rho", s.rho}, {"v", s.v}, {"u", s.u}, {"p", s.p}};
}

PrimitiveState primitive_state_from_json(const Json& j, const std::string& context) {
    expect_fields(j, {"rho", "p"}, {"v", "u"}, context);
    PrimitiveState s;
    s.rho = number_field(j, "rho", context);
    s.p = number_field(j, "p", context);
    s.v = j.contains("v") ? number_field(j, "v", context) : 0.0;
    s.u = j.contains("u") ? number_field(j, "u", context) : 0.0;
    return s;
}

Json to_json(const ConservativeState& c) {
    return Json{{"rho", c.rho}, {"m1", c.m1}, {"m2", c.m2}, {"E", c.E}};
}

ConservativeState conservative_state_from_json(const Json& j, const std::string& context) {
    expect_fields(j, {"rho", "m1", "m2", "E"}, {}, context);
    ConservativeState c;
    c.rho = number_field(j, "rho", context);
    c.m1 = number_field(j, "m1", context);
    c.m2 = number_field(j, "m2", context);
    c.E = number_field(j, "E", context);
    return c;
}

Json to_json(const ExtendedState& z) {
    Json arr = Json::array();
    for (double v : z.z) arr.push_back(v);
    return Json{{"z", arr}, {"constrained", z.constrained}};
}

ExtendedState extended_state_from_json(const Json& j, const std::string& context) {
    expect_fields(j, {"z"}, {"constrained"}, context);
    const Json& arr = j.at("z");
    if (!arr.is_array() || arr.size() != 8)
        throw ConfigError(context + ": field 'z' must be an array of 8 numbers");
    ExtendedState z;
    for (std::size_t k = 0; k < 8; ++k) {
        if (!arr[k].is_number())
            throw ConfigError(context + ": field 'z' must be an array of 8 numbers");
        z.z[k] = arr[k].get<double>();
    }
    if (j.contains("constrained")) {
        if (!j.at("constrained").is_boolean())
            throw ConfigError(context + ": field 'constrained' must be a boolean");
        z.constrained = j.at("constrained").get<bool>();
    }
    return z;
}

Json to_json(const Wedge& w) {
    return Json{{"sigma_left", sigma_to_json(w.sigma_left)},
                {"sigma_right", sigma_to_json(w.sigma_right)},
                {"state", to_json(w.state)}};
}

Wedge wedge_from_json(const Json& j, const std::string& context) {
    expect_fields(j, {"sigma_left", "sigma_right", "state"}, {}, context);
    Wedge w;
    w.sigma_left = sigma_from_json(j.at("sigma_left"), context + ".sigma_left");
    w.sigma_right = sigma_from_json(j.at("sigma_right"), context + ".sigma_right");
    w.state = primitive_state_from_json(j.at("state"), context + ".state");
    return w;
}

Json to_json(const FanSolution& f) {
    Json wedges = Json::array();
    for (const Wedge& w : f.wedges) wedges.push_back(to_json(w));
    return Json{{"wedges", wedges}, {"label", f.label}};
}

FanSolution fan_from_json(const Json& j, const std::string& context) {
    expect_fields(j, {"wedges"}, {"label"}, context);
    if (!j.at("wedges").is_array())
        throw ConfigError(context + ": field 'wedges' must be an array");
    FanSolution f;
    std::size_t i = 0;
    for (const Json& wj : j.at("wedges")) {
        f.wedges.push_back(wedge_from_json(wj, context + ".wedges[" + std::to_string(i) + "]"));
        ++i;
    }
    if (j.contains("label")) {
        if (!j.at("label").is_string())
            throw ConfigError(context + ": field 'label' must be a string");
        f.label = j.at("label").get<std::string>();
    }
    return f;
}

Json to_json(const RiemannData& d) {
    return Json{{"rho_minus", d.rho_minus}, {"p_minus", d.p_minus}, {"p_plus", d.p_plus}};
}

RiemannData riemann_data_from_json(const Json& j, const std::string& context) {
    expect_fields(j, {"rho_minus", "p_minus", "p_plus"}, {}, context);
    RiemannData d;
    d.rho_minus = number_field(j, "rho_minus", context);
    d.p_minus = number_field(j, "p_minus", context);
    d.p_plus = number_field(j, "p_plus", context);
    return d;
}

Json to_json(const WildParameters& w) {
    Json slopes = Json::array();
    for (double s : w.slopes) slopes.push_back(s);
    return Json{{"riemann", to_json(w.base)}, {"delta_p", w.delta_p},
                {"rho1", w.rho1},            {"rho2", w.rho2},
                {"slopes", slopes},          {"direction_angle", w.direction_angle}};
}

WildParameters wild_parameters_from_json(const Json& j, const std::string& context) {
    expect_fields(j, {"riemann", "delta_p"},
                  {"rho1", "rho2", "slopes", "direction_angle"}, context);
    const RiemannData d = riemann_data_from_json(j.at("riemann"), context + ".riemann");
    WildParameters w = default_wild_parameters(d, number_field(j, "delta_p", context));
    if (j.contains("rho1")) w.rho1 = number_field(j, "rho1", context);
    if (j.contains("rho2")) w.rho2 = number_field(j, "rho2", context);
    if (j.contains("slopes")) {
        const Json& arr = j.at("slopes");
        if (!arr.is_array() || arr.size() != 4)
            throw ConfigError(context + ": field 'slopes' must be an array of 4 numbers");
        for (std::size_t k = 0; k < 4; ++k) {
            if (!arr[k].is_number())
                throw ConfigError(context + ": field 'slopes' must be an array of 4 numbers");
            w.slopes[k] = arr[k].get<double>();
        }
    }
    if (j.contains("direction_angle"))
        w.direction_angle = number_field(j, "direction_angle", context);
    return w;
}

std::string status_to_string(RegionStatus s) {
    switch (s) {
        case RegionStatus::Resolved: return "resolved";
        case RegionStatus::MacroscopicApprox: return "macroscopic";
        case RegionStatus::Unresolved: return "unresolved";
    }
    return "resolved";
}

RegionStatus status_from_string(const std::string& s, const std::string& context) {
    if (s == "resolved") return RegionStatus::Resolved;
    if (s == "macroscopic") return RegionStatus::MacroscopicApprox;
    if (s == "unresolved") return RegionStatus::Unresolved;
    throw ConfigError(context + ": unknown status '" + s + "'");
}

Json to_json(const Atom& a) {
    return Json{{"weight", a.weight}, {"state", to_json(a.state)}};
}

Atom atom_from_json(const Json& j, const std::string& context) {
    expect_fields(j, {"weight", "state"}, {}, context);
    Atom a;
    a.weight = number_field(j, "weight", context);
    a.state = extended_state_from_json(j.at("state"), context + ".state");
    return a;
}

Json to_json(const MeasureRegion& r) {
    Json atoms = Json::array();
    for (const Atom& a : r.atoms) atoms.push_back(to_json(a));
    return Json{{"sigma_left", sigma_to_json(r.sigma_left)},
                {"sigma_right", sigma_to_json(r.sigma_right)},
                {"status", status_to_string(r.status)},
                {"note", r.note},
                {"atoms", atoms}};
}

MeasureRegion measure_region_from_json(const Json& j, const std::string& context) {
    expect_fields(j, {"sigma_left", "sigma_right"}, {"status", "note", "atoms"}, context);
    MeasureRegion r;
    r.sigma_left = sigma_from_json(j.at("sigma_left"), context + ".sigma_left");
    r.sigma_right = sigma_from_json(j.at("sigma_right"), context + ".sigma_right");
    if (j.contains("status")) {
        if (!j.at("status").is_string())
            throw ConfigError(context + ": field 'status' must be a string");
        r.status = status_from_string(j.at("status").get<std::string>(), context);
    }
    if (j.contains("note")) {
        if (!j.at("note").is_string())
            throw ConfigError(context + ": field 'note' must be a string");
        r.note = j.at("note").get<std::string>();
    }
    if (j.contains("atoms")) {
        if (!j.at("atoms").is_array())
            throw ConfigError(context + ": field 'atoms' must be an array");
        std::size_t i = 0;
        for (const Json& aj : j.at("atoms")) {
            r.atoms.push_back(
                atom_from_json(aj, context + ".atoms[" + std::to_string(i) + "]"));
            ++i;
        }
    }
    return r;
}

Json to_json(const AtomicYoungMeasure& nu) {
    Json regions = Json::array();
    for (const MeasureRegion& r : nu.regions) regions.push_back(to_json(r));
    return Json{{"regions", regions}, {"label", nu.label}};
}

AtomicYoungMeasure measure_from_json(const Json& j, const std::string& context) {
    expect_fields(j, {"regions"}, {"label"}, context);
    if (!j.at("regions").is_array())
        throw ConfigError(context + ": field 'regions' must be an array");
    AtomicYoungMeasure nu;
    std::size_t i = 0;
    for (const Json& rj : j.at("regions")) {
        nu.regions.push_back(
            measure_region_from_json(rj, context + ".regions[" + std::to_string(i) + "]"));
        ++i;
    }
    if (j.contains("label")) {
        if (!j.at("label").is_string())
            throw ConfigError(context + ": field 'label' must be a string");
        nu.label = j.at("label").get<std::string>();
    }
    return nu;
}

Json to_json(const TestFunction& phi) {
    return Json{{"center_t", phi.center_t},
                {"center_x1", phi.center_x1},
                {"center_x2", phi.center_x2},
                {"radius", phi.radius},
                {"momentum_weight", Json::array({phi.momentum_weight[0], phi.momentum_weight[1]})}};
}

TestFunction test_function_from_json(const Json& j, const std::string& context) {
    expect_fields(j, {"center_t", "center_x1", "radius"}, {"center_x2", "momentum_weight"},
                  context);
    TestFunction phi;
    phi.center_t = number_field(j, "center_t", context);
    phi.center_x1 = number_field(j, "center_x1", context);
    phi.radius = number_field(j, "radius", context);
    phi.center_x2 = j.contains("center_x2") ? number_field(j, "center_x2", context) : 0.0;
    if (j.contains("momentum_weight")) {
        const Json& arr = j.at("momentum_weight");
        if (!arr.is_array() || arr.size() != 2 || !arr[0].is_number() || !arr[1].is_number())
            throw ConfigError(context + ": field 'momentum_weight' must be an array of 2 numbers");
        phi.momentum_weight = {arr[0].get<double>(), arr[1].get<double>()};
    }
    return phi;
}

} // namespace mvsol
