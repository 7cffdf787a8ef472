// mvsol: verification toolkit for self-similar solutions and atomic
// measure-valued solutions of the 2-D full compressible Euler system.
//
// Subcommands: riemann, wavecone, construct, verify-mvs, rigidity,
// main-theorem. Exit codes: 0 all checks passed, 1 a check failed (report
// still written), 2 invalid input (no report).

#include "mvsol/json_io.hpp"
#include "mvsol/report.hpp"
#include "mvsol/svg.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

namespace {

using namespace mvsol;

struct GlobalOptions {
    std::string config_path;
    std::string out_path;
    std::string svg_path;
    double tol = 0.0; // per-command default applied when not set
    bool tol_set = false;
    unsigned long long seed = 0;
    bool no_timestamp = false;
};

void attach_global_flags(CLI::App* cmd, GlobalOptions& g) {
    cmd->add_option("--config", g.config_path, "JSON config file (schema_version 1)");
    cmd->add_option("--out", g.out_path, "write the JSON report to this file");
    cmd->add_option("--svg", g.svg_path, "write a schematic SVG diagram to this file");
    cmd->add_option("--tol", g.tol, "tolerance override for the command's pass criterion")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", g.seed, "seed for randomized sweeps");
    cmd->add_flag("--no-timestamp", g.no_timestamp,
                  "omit timestamp and wall-clock so reports are byte-identical");
}

std::optional<Json> load_config(const GlobalOptions& g) {
    if (g.config_path.empty()) return std::nullopt;
    Json j = load_json_file(g.config_path);
    if (!j.is_object()) throw ConfigError(g.config_path + ": config must be a JSON object");
    if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer() ||
        j.at("schema_version").get<int>() != 1) {
        throw ConfigError(g.config_path + ": config requires \"schema_version\": 1");
    }
    return j;
}

double effective_tol(const GlobalOptions& g, double command_default) {
    return g.tol_set ? g.tol : command_default;
}

// --- shared serialization helpers -----------------------------------------

Json to_json(const ShockConstants& k) {
    return Json{{"rho_K", k.rho_K}, {"v_K", k.v_K}, {"shock_speed", k.shock_speed}};
}

Json vec4_json(const Vec4& v) {
    return Json::array({v[0], v[1], v[2], v[3]});
}

Json rh_reports_json(const std::vector<InterfaceJumpReport>& reports) {
    Json arr = Json::array();
    for (const InterfaceJumpReport& r : reports) {
        arr.push_back(Json{{"sigma", r.sigma},
                           {"residual", vec4_json(r.residual)},
                           {"normalized", vec4_json(r.normalized)}});
    }
    return arr;
}

const char* lax_verdict_name(LaxVerdict v) {
    switch (v) {
        case LaxVerdict::Admissible1Shock: return "admissible-1-shock";
        case LaxVerdict::NotA1Shock: return "not-a-1-shock";
        case LaxVerdict::ContactDegenerate: return "contact-degenerate";
    }
    return "contact-degenerate";
}

Json lax_reports_json(const std::vector<LaxReport>& reports) {
    Json arr = Json::array();
    for (const LaxReport& r : reports) {
        arr.push_back(Json{{"sigma", r.sigma},
                           {"v_left", r.v_left},
                           {"c_left", r.c_left},
                           {"v_right", r.v_right},
                           {"c_right", r.c_right},
                           {"verdict", lax_verdict_name(r.verdict)}});
    }
    return arr;
}

Json cone_verdict_json(const ConeVerdict& v) {
    Json j{{"in_cone", v.in_cone},
           {"rank", v.rank},
           {"singular_values", Json(v.singular_values)},
           {"marginal", v.marginal}};
    if (v.kernel_direction) j["kernel_direction"] = Json(*v.kernel_direction);
    return j;
}

Json symbol_json(const SymbolMatrix& Z) {
    Json rows = Json::array();
    for (const auto& row : Z.Z) rows.push_back(Json(row));
    return rows;
}

Json beta_skeleton_json(const BetaSkeleton& sk) {
    Json regions = Json::array();
    for (const BetaRegion& r : sk.regions) {
        Json rj{{"name", r.name},
                {"sigma_left", sigma_to_json(r.sigma_left)},
                {"sigma_right", sigma_to_json(r.sigma_right)},
                {"status", status_to_string(r.status)}};
        if (r.status == RegionStatus::Unresolved) {
            rj["rho_hint"] = r.rho_hint;
        } else {
            rj["state"] = to_json(r.state);
        }
        regions.push_back(rj);
    }
    return Json{
        {"regions", regions},
        {"states",
         Json{{"omega_minus", to_json(sk.states.omega_minus)},
              {"omega_delta", to_json(sk.states.omega_delta)},
              {"omega_plus", to_json(sk.states.omega_plus)},
              {"omega1_rho", sk.states.omega1_rho},
              {"omega2_rho", sk.states.omega2_rho},
              {"omega2_p", sk.states.omega2_p},
              {"omega2_speed2", sk.states.omega2_speed2}}},
        {"perturbation", Json{{"p_delta", sk.pert.p_delta},
                              {"delta_v", sk.pert.delta_v},
                              {"rho_delta", sk.pert.rho_delta}}},
        {"sigma3", sk.sigma3}};
}

Json rank_condition_json(const RankConditionVerdict& v) {
    Json j{{"determinant", v.determinant},
           {"condition2_rhs", v.condition2_rhs},
           {"condition2_gap", v.condition2_gap},
           {"p_gap", v.p_gap},
           {"tol", v.tol},
           {"rank3", v.rank3}};
    if (v.cross_determinant) j["cross_determinant"] = *v.cross_determinant;
    if (v.cross_rank) j["cross_rank"] = *v.cross_rank;
    return j;
}

const char* interface_class_name(InterfaceClass c) {
    switch (c) {
        case InterfaceClass::Verifiable: return "verifiable";
        case InterfaceClass::Approximate: return "approximate";
        case InterfaceClass::Unverified: return "unverified";
    }
    return "unverified";
}

Json verify_report_json(const VerifyReport& rep) {
    Json interfaces = Json::array();
    for (const InterfaceResidual& ir : rep.interfaces) {
        interfaces.push_back(Json{{"sigma", ir.sigma},
                                  {"jump", vec4_json(ir.jump)},
                                  {"normalized", vec4_json(ir.normalized)},
                                  {"class", interface_class_name(ir.cls)}});
    }
    Json per_phi = Json::array();
    for (const WeakResidualReport& w : rep.per_phi) {
        per_phi.push_back(Json{{"worst_normalized", w.worst_normalized},
                               {"norm_grad", w.norm_grad},
                               {"touches_unresolved", w.touches_unresolved},
                               {"touches_macroscopic", w.touches_macroscopic}});
    }
    return Json{{"passed", rep.passed},
                {"tol", rep.tol},
                {"worst_quadrature", rep.worst_quadrature},
                {"worst_interface", rep.worst_interface},
                {"checked_phis", rep.checked_phis},
                {"skipped_phis", rep.skipped_phis},
                {"worst_cross_discrepancy", rep.worst_cross_discrepancy},
                {"interfaces", interfaces},
                {"per_phi", per_phi}};
}

Json empirical_json(const EmpiricalMeasure& emp, std::size_t max_atoms = 8) {
    Json atoms = Json::array();
    for (std::size_t i = 0; i < emp.atoms.size() && i < max_atoms; ++i) {
        atoms.push_back(
            Json{{"weight", emp.atoms[i].weight}, {"value", Json(emp.atoms[i].value)}});
    }
    return Json{{"atom_count", emp.atoms.size()}, {"atoms", atoms}};
}

Json dichotomy_json(const DichotomyReport& rep) {
    Json curve = Json::array();
    for (const DichotomyPoint& pt : rep.curve) {
        curve.push_back(Json{{"n", pt.n},
                             {"residual_estimate", pt.residual_estimate},
                             {"tv_to_target", pt.tv_to_target}});
    }
    return Json{{"cone", cone_verdict_json(rep.cone)},
                {"in_cone", rep.in_cone},
                {"degenerate", rep.degenerate},
                {"curve", curve},
                {"positive_floor", rep.positive_floor},
                {"floor_spread", rep.floor_spread},
                {"moment_worst_rel_error", rep.moment_worst_rel_error},
                {"empirical", empirical_json(rep.empirical)},
                {"conclusion", rep.conclusion},
                {"caveat", rep.caveat}};
}

// Extended states of the constant-state example: z1 is the lift of
// (rho, m, E) = (1, (1,0), 3/2); z2(gamma) the lift of (gamma, (1,0),
// 3/(2 gamma)).
std::pair<ExtendedState, ExtendedState> gamma_states(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw InvalidData("gamma must be positive and finite");
    const ExtendedState z1 = lift_extended(ConservativeState{1.0, 1.0, 0.0, 1.5});
    const ExtendedState z2 =
        lift_extended(ConservativeState{gamma, 1.0, 0.0, 1.5 / gamma});
    return {z1, z2};
}

// --- riemann ----------------------------------------------------------------

struct RiemannFlags {
    double rho_minus = 1.0, p_minus = 1.0, p_plus = 2.0;
    bool rho_set = false, pm_set = false, pp_set = false;
};

RiemannData resolve_riemann_data(const std::optional<Json>& config, const RiemannFlags& f,
                                 const char* key = "riemann") {
    RiemannData d;
    if (config && config->contains(key))
        d = riemann_data_from_json(config->at(key), std::string("config.") + key);
    if (f.rho_set || !config || !config->contains(key)) d.rho_minus = f.rho_minus;
    if (f.pm_set || !config || !config->contains(key)) d.p_minus = f.p_minus;
    if (f.pp_set || !config || !config->contains(key)) d.p_plus = f.p_plus;
    return d;
}

RunReport run_riemann(const GlobalOptions& g, const RiemannFlags& flags) {
    const std::optional<Json> config = load_config(g);
    if (config)
        expect_fields(*config, {"schema_version"}, {"riemann"}, g.config_path);
    const RiemannData d = resolve_riemann_data(config, flags);
    const double tol = effective_tol(g, 1e-11);

    RunReport rep;
    rep.command = "riemann";
    rep.inputs = Json{{"riemann", to_json(d)}, {"tol", tol}, {"seed", g.seed}};

    const ShockConstants k = shock_constants(d);
    const FanSolution fan = self_similar_shock(d);
    const std::vector<InterfaceJumpReport> rh = rh_residual(fan);
    const std::vector<LaxReport> lax = lax_admissibility(fan);

    double worst = 0.0;
    for (const InterfaceJumpReport& r : rh)
        for (double c : r.residual) worst = std::max(worst, std::abs(c));
    if (worst > tol) rep.failures.push_back("rh-residual exceeds tolerance");
    for (const LaxReport& r : lax)
        if (r.verdict != LaxVerdict::Admissible1Shock)
            rep.failures.push_back("lax-admissibility violated");

    const PrimitiveState& left = fan.wedges.front().state;
    const PrimitiveState& right = fan.wedges.back().state;
    rep.results = Json{{"constants", to_json(k)},
                       {"fan", to_json(fan)},
                       {"rh_residuals", rh_reports_json(rh)},
                       {"worst_rh_residual", worst},
                       {"lax", lax_reports_json(lax)},
                       {"entropy_left", entropy(left)},
                       {"entropy_right", entropy(right)}};
    rep.passed = rep.failures.empty();

    if (!g.svg_path.empty()) write_text_file(g.svg_path, fan_svg(fan, "one-shock fan"));
    return rep;
}

// --- wavecone ---------------------------------------------------------------

RunReport run_wavecone(const GlobalOptions& g, double gamma, bool gamma_set) {
    const std::optional<Json> config = load_config(g);
    SymbolMatrix Z;
    RunReport rep;
    rep.command = "wavecone";

    if (config && config->contains("za")) {
        expect_fields(*config, {"schema_version", "za", "zb"}, {}, g.config_path);
        const ExtendedState za = extended_state_from_json(config->at("za"), "config.za");
        const ExtendedState zb = extended_state_from_json(config->at("zb"), "config.zb");
        Z = difference_symbol_euler(za, zb);
        rep.inputs = Json{{"za", to_json(za)}, {"zb", to_json(zb)}, {"seed", g.seed}};
    } else {
        if (config) {
            expect_fields(*config, {"schema_version"}, {"gamma"}, g.config_path);
            if (!gamma_set && config->contains("gamma"))
                gamma = number_field(*config, "gamma", g.config_path);
        }
        const auto [z1, z2] = gamma_states(gamma);
        Z = difference_symbol_euler(z1, z2);
        rep.inputs = Json{{"gamma", gamma},
                          {"z1", to_json(z1)},
                          {"z2", to_json(z2)},
                          {"seed", g.seed}};
    }

    const ConeVerdict verdict = cone_membership(Z);
    const double det = submatrix_determinant(Z, {0, 1, 2});
    rep.results = Json{{"symbol", symbol_json(Z)},
                       {"det_rows_123", det},
                       {"cone", cone_verdict_json(verdict)}};
    if (rep.inputs.contains("gamma")) {
        const double gm = rep.inputs.at("gamma").get<double>();
        rep.results["det_closed_form"] =
            2.0 * (1.0 - gm) * (1.0 - 1.0 / gm) * (1.0 - 1.0 / gm);
    }
    rep.passed = true;
    if (!g.svg_path.empty())
        throw ConfigError("wavecone does not produce an SVG diagram");
    return rep;
}

// --- construct ---------------------------------------------------------------

RunReport run_construct(const GlobalOptions& g, const RiemannFlags& flags, double delta_p,
                        bool delta_set) {
    const std::optional<Json> config = load_config(g);
    WildParameters params;
    if (config && config->contains("parameters")) {
        expect_fields(*config, {"schema_version", "parameters"}, {}, g.config_path);
        params = wild_parameters_from_json(config->at("parameters"), "config.parameters");
        if (flags.rho_set) params.base.rho_minus = flags.rho_minus;
        if (flags.pm_set) params.base.p_minus = flags.p_minus;
        if (flags.pp_set) params.base.p_plus = flags.p_plus;
        if (delta_set) {
            params = default_wild_parameters(params.base, delta_p);
        }
    } else {
        if (config) expect_fields(*config, {"schema_version"}, {"riemann"}, g.config_path);
        const RiemannData d = resolve_riemann_data(config, flags);
        params = default_wild_parameters(d, delta_p);
    }
    const double tol = effective_tol(g, 1e-11);

    RunReport rep;
    rep.command = "construct";
    rep.inputs = Json{{"parameters", to_json(params)}, {"tol", tol}, {"seed", g.seed}};

    const WildFans fans = assemble_fans(params.base, params);
    const AtomicYoungMeasure nu =
        build_final_measure(fans.fan_alpha, fans.fan_beta_skeleton);
    const double entropy_margin = overlap_entropy_margin(fans);

    const std::vector<InterfaceJumpReport> rh = rh_residual(fans.fan_alpha);
    double worst = 0.0;
    for (const InterfaceJumpReport& r : rh)
        for (double c : r.residual) worst = std::max(worst, std::abs(c));
    if (worst > tol) rep.failures.push_back("rh-residual exceeds tolerance");
    if (!(entropy_margin > 0.0)) rep.failures.push_back("entropy margin not positive");

    rep.results = Json{{"fan_alpha", to_json(fans.fan_alpha)},
                       {"fan_beta_skeleton", beta_skeleton_json(fans.fan_beta_skeleton)},
                       {"overlap", Json{{"sigma_left", fans.overlap.sigma_left},
                                        {"sigma_right", fans.overlap.sigma_right},
                                        {"z_alpha", to_json(fans.overlap.z_alpha)},
                                        {"z_beta", to_json(fans.overlap.z_beta)}}},
                       {"measure", to_json(nu)},
                       {"worst_rh_residual", worst},
                       {"entropy_margin", entropy_margin}};
    rep.passed = rep.failures.empty();

    if (!g.svg_path.empty())
        write_text_file(g.svg_path, wild_svg(fans, "wild construction skeleton"));
    return rep;
}

// --- verify-mvs ---------------------------------------------------------------

RunReport run_verify_mvs(const GlobalOptions& g, const RiemannFlags& flags, int random_fans) {
    const std::optional<Json> config = load_config(g);
    const double tol = effective_tol(g, 1e-8);

    QuadraturePolicy policy;
    AtomicYoungMeasure nu;
    Json input_measure;
    if (config && config->contains("measure")) {
        expect_fields(*config, {"schema_version", "measure"}, {"dictionary", "quadrature"},
                      g.config_path);
        nu = measure_from_json(config->at("measure"), "config.measure");
        input_measure = Json{{"measure", to_json(nu)}};
    } else {
        if (config)
            expect_fields(*config, {"schema_version"}, {"riemann", "dictionary", "quadrature"},
                          g.config_path);
        const RiemannData d = resolve_riemann_data(config, flags);
        nu = measure_from_fan(self_similar_shock(d));
        input_measure = Json{{"riemann", to_json(d)}};
    }
    if (config && config->contains("quadrature")) {
        const Json& q = config->at("quadrature");
        expect_fields(q, {}, {"cells_per_axis", "order", "T"}, "config.quadrature");
        if (q.contains("cells_per_axis"))
            policy.cells_per_axis =
                static_cast<int>(number_field(q, "cells_per_axis", "config.quadrature"));
        if (q.contains("order"))
            policy.order = static_cast<int>(number_field(q, "order", "config.quadrature"));
        if (q.contains("T")) policy.T = number_field(q, "T", "config.quadrature");
    }

    std::vector<TestFunction> dictionary;
    if (config && config->contains("dictionary")) {
        const Json& arr = config->at("dictionary");
        if (!arr.is_array())
            throw ConfigError("config.dictionary must be an array of test functions");
        std::size_t i = 0;
        for (const Json& pj : arr) {
            dictionary.push_back(test_function_from_json(
                pj, "config.dictionary[" + std::to_string(i) + "]"));
            ++i;
        }
    } else {
        dictionary = default_dictionary(nu, policy.T);
    }

    RunReport rep;
    rep.command = "verify-mvs";
    rep.inputs = input_measure;
    rep.inputs["tol"] = tol;
    rep.inputs["dictionary_size"] = dictionary.size();
    rep.inputs["quadrature"] = Json{{"cells_per_axis", policy.cells_per_axis},
                                    {"order", policy.order},
                                    {"T", policy.T}};
    rep.inputs["seed"] = g.seed;

    const VerifyReport vr = verify(nu, dictionary, tol, policy);
    rep.results = Json{{"verify", verify_report_json(vr)}};
    if (!vr.passed) rep.failures.push_back("measure-valued verification failed");

    // Optional randomized sweep: quadrature must agree with the exact
    // interface reduction on arbitrary (non-solution) fans.
    if (random_fans > 0) {
        std::mt19937_64 rng(g.seed);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        double worst_ratio = 0.0;
        for (int k = 0; k < random_fans; ++k) {
            FanSolution f;
            const int wedges = 2 + static_cast<int>(u01(rng) * 3.0);
            std::vector<double> cuts;
            for (int i = 0; i + 1 < wedges; ++i) cuts.push_back(-2.0 + 4.0 * u01(rng));
            std::sort(cuts.begin(), cuts.end());
            for (int i = 0; i < wedges; ++i) {
                Wedge w;
                w.sigma_left = i == 0 ? -std::numeric_limits<double>::infinity() : cuts[i - 1];
                w.sigma_right = i == wedges - 1 ? std::numeric_limits<double>::infinity()
                                                : cuts[i];
                w.state = PrimitiveState{0.5 + 2.5 * u01(rng), -1.0 + 2.0 * u01(rng),
                                         -1.0 + 2.0 * u01(rng), 0.5 + 2.5 * u01(rng)};
                f.wedges.push_back(w);
            }
            f.label = "random";
            const AtomicYoungMeasure mu = measure_from_fan(f);
            const VerifyReport r = verify(mu, {dictionary.front()}, 1e30, policy);
            worst_ratio = std::max(worst_ratio, r.worst_cross_discrepancy);
            if (!r.passed)
                rep.failures.push_back("random-fan quadrature disagrees with the exact reduction");
        }
        rep.results["random_fan_worst_cross_discrepancy"] = worst_ratio;
    }

    rep.passed = rep.failures.empty();
    if (!g.svg_path.empty())
        throw ConfigError("verify-mvs does not produce an SVG diagram");
    return rep;
}

// --- rigidity ---------------------------------------------------------------

std::string dichotomy_csv(const DichotomyReport& rep) {
    std::ostringstream out;
    out << "n,residual_estimate,tv_distance\n";
    char buf[96];
    for (const DichotomyPoint& pt : rep.curve) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", pt.n, pt.residual_estimate,
                      pt.tv_to_target);
        out << buf;
    }
    return out.str();
}

RunReport run_rigidity(const GlobalOptions& g, double gamma, bool gamma_set,
                       std::vector<int> n_list, const std::string& profile, double duty,
                       double r, int grid, const std::string& csv_path) {
    const std::optional<Json> config = load_config(g);
    if (config) {
        expect_fields(*config, {"schema_version"},
                      {"gamma", "n_list", "profile", "duty", "r", "grid"}, g.config_path);
        if (!gamma_set && config->contains("gamma"))
            gamma = number_field(*config, "gamma", g.config_path);
        if (config->contains("n_list")) {
            const Json& arr = config->at("n_list");
            if (!arr.is_array()) throw ConfigError("config.n_list must be an array");
            n_list.clear();
            for (const Json& v : arr) {
                if (!v.is_number_integer())
                    throw ConfigError("config.n_list must contain integers");
                n_list.push_back(v.get<int>());
            }
        }
    }

    DichotomyOptions opts;
    if (!n_list.empty()) opts.n_list = n_list;
    opts.duty = duty;
    opts.r = r;
    opts.grid.cells = grid;
    if (profile == "square") {
        opts.profile = WaveProfile::Square;
    } else if (profile == "sine") {
        opts.profile = WaveProfile::Sine;
    } else {
        throw ConfigError("profile must be 'square' or 'sine'");
    }
    for (int n : opts.n_list)
        if (n < 1) throw InvalidData("frequencies must be positive");

    RunReport rep;
    rep.command = "rigidity";
    rep.inputs = Json{{"gamma", gamma},       {"n_list", Json(opts.n_list)},
                      {"profile", profile},   {"duty", duty},
                      {"r", r},               {"grid", grid},
                      {"seed", g.seed}};

    const auto [z1, z2] = gamma_states(gamma);
    const DichotomyReport dr = dichotomy_experiment(z1, z2, euler_operator(), opts);
    rep.results = dichotomy_json(dr);
    const std::string csv = dichotomy_csv(dr);
    rep.results["csv"] = csv;
    if (!csv_path.empty()) write_text_file(csv_path, csv);

    const double tv_last = dr.curve.empty() ? 1.0 : dr.curve.back().tv_to_target;
    if (dr.degenerate) {
        // strong convergence, trivially consistent
    } else if (dr.in_cone) {
        for (const DichotomyPoint& pt : dr.curve)
            if (pt.residual_estimate > 1e-12)
                rep.failures.push_back("constraint residual not exact on a cone direction");
        if (tv_last > 0.05)
            rep.failures.push_back("empirical measure did not converge to the target");
    } else {
        if (!(dr.positive_floor > 0.0))
            rep.failures.push_back("dual-norm lower bound not positive");
        if (dr.floor_spread > 0.2)
            rep.failures.push_back("dual-norm floor spread exceeds 20%");
        if (tv_last > 0.05)
            rep.failures.push_back("empirical measure did not converge to the target");
    }
    rep.passed = rep.failures.empty();
    if (!g.svg_path.empty())
        throw ConfigError("rigidity does not produce an SVG diagram");
    return rep;
}

// --- main-theorem -------------------------------------------------------------

RunReport run_main_theorem(const GlobalOptions& g, const RiemannFlags& flags, double delta_p,
                           bool delta_set, bool constant_states, double gamma,
                           bool gamma_set) {
    const std::optional<Json> config = load_config(g);
    if (config) {
        expect_fields(*config, {"schema_version"},
                      {"riemann", "delta_p", "constant_states", "gamma"}, g.config_path);
        if (!delta_set && config->contains("delta_p"))
            delta_p = number_field(*config, "delta_p", g.config_path);
        if (config->contains("constant_states")) {
            if (!config->at("constant_states").is_boolean())
                throw ConfigError("config.constant_states must be a boolean");
            constant_states = constant_states || config->at("constant_states").get<bool>();
        }
        if (!gamma_set && config->contains("gamma"))
            gamma = number_field(*config, "gamma", g.config_path);
    }

    RunReport rep;
    rep.command = "main-theorem";

    if (constant_states) {
        rep.inputs = Json{{"constant_states", true}, {"gamma", gamma}, {"seed", g.seed}};
        const auto [z1, z2] = gamma_states(gamma);
        const SymbolMatrix Z = difference_symbol_euler(z1, z2);
        const ConeVerdict cone = cone_membership(Z);
        const double det = submatrix_determinant(Z, {0, 1, 2});
        const double det_expected =
            2.0 * (1.0 - gamma) * (1.0 - 1.0 / gamma) * (1.0 - 1.0 / gamma);

        const AtomicYoungMeasure nu =
            constant_measure({{0.5, z1}, {0.5, z2}}, "two-atom constant measure");
        const VerifyReport vr = verify(nu, default_dictionary(nu), 1e-8);

        DichotomyOptions dopts;
        dopts.n_list = {1, 4, 16, 64};
        dopts.sphere_points = 16;
        dopts.grid.cells = 128;
        const DichotomyReport dr = dichotomy_experiment(z1, z2, euler_operator(), dopts);

        const PrimitiveState p1 = conservative_to_primitive(
            ConservativeState{z1.rho(), z1.m1(), z1.m2(), z1.E()});
        const PrimitiveState p2 = conservative_to_primitive(
            ConservativeState{z2.rho(), z2.m1(), z2.m2(), z2.E()});
        const double entropy_diff = std::abs(entropy(p1) - entropy(p2));

        if (std::abs(det - det_expected) > 1e-12 * (1.0 + std::abs(det_expected)))
            rep.failures.push_back("determinant does not match the closed form");
        if (std::abs(gamma - 1.0) < 1e-12) {
            if (!cone.in_cone) rep.failures.push_back("gamma=1 difference must be in the cone");
        } else {
            if (cone.rank != 3) rep.failures.push_back("difference symbol must have rank 3");
            if (!vr.passed) rep.failures.push_back("two-atom constant measure failed MVS checks");
            if (dr.in_cone || !(dr.positive_floor > 0.0))
                rep.failures.push_back("dichotomy did not certify non-generability");
            if (!(entropy_diff > 0.0))
                rep.failures.push_back("entropy difference not positive");
        }

        rep.results = Json{{"symbol", symbol_json(Z)},
                           {"det_rows_123", det},
                           {"det_closed_form", det_expected},
                           {"cone", cone_verdict_json(cone)},
                           {"mvs", verify_report_json(vr)},
                           {"dichotomy", dichotomy_json(dr)},
                           {"entropy_difference", entropy_diff}};
        rep.passed = rep.failures.empty();
        std::cerr << (rep.passed ? "PASS" : "FAIL: " + rep.failures.front()) << "\n";
        if (!g.svg_path.empty())
            throw ConfigError("constant-states mode does not produce an SVG diagram");
        return rep;
    }

    const RiemannData d = resolve_riemann_data(config, flags);
    const double rh_tol = effective_tol(g, 1e-11);
    const double mvs_tol = 1e-8;
    rep.inputs =
        Json{{"riemann", to_json(d)}, {"delta_p", delta_p}, {"tol", rh_tol}, {"seed", g.seed}};

    // 1) fan alpha is an exact admissible 1-shock
    const FanSolution alpha = self_similar_shock(d);
    const std::vector<InterfaceJumpReport> rh = rh_residual(alpha);
    double worst_rh = 0.0;
    for (const InterfaceJumpReport& r : rh)
        for (double c : r.residual) worst_rh = std::max(worst_rh, std::abs(c));
    if (worst_rh > rh_tol) rep.failures.push_back("rh-exactness");
    for (const LaxReport& r : lax_admissibility(alpha))
        if (r.verdict != LaxVerdict::Admissible1Shock) rep.failures.push_back("lax-admissibility");

    // 2) skeleton, rank condition, margins
    const WildParameters params = default_wild_parameters(d, delta_p);
    const WildFans fans = assemble_fans(d, params);
    const SkeletonStates& ss = fans.fan_beta_skeleton.states;
    const RankConditionVerdict rank =
        rank_condition(d, ss.omega2_rho, ss.omega2_p, ss.omega2_speed2);
    if (!rank.rank3) rep.failures.push_back("rank-condition");
    if (rank.cross_rank && *rank.cross_rank != 3) rep.failures.push_back("rank-cross-check");
    if (!(rank.p_gap > 0.0)) rep.failures.push_back("p2-gap");
    if (!(rank.condition2_gap > 0.0)) rep.failures.push_back("condition2-gap");
    const PersistenceMargins margins = margins_bisection(d);
    if (!(margins.delta_star > 0.0 && margins.eta_star > 0.0))
        rep.failures.push_back("margins-positive");

    // 3) entropy non-constancy on the overlap
    const double entropy_margin = overlap_entropy_margin(fans);
    if (!(entropy_margin > 0.0)) rep.failures.push_back("entropy-margin");

    // 4) MVS checks on the final measure: exact interfaces, quadrature on a
    //    small dictionary, and the linear-identity (convexity) spot check.
    const AtomicYoungMeasure nu = build_final_measure(fans.fan_alpha, fans.fan_beta_skeleton);
    const double s = shock_constants(d).shock_speed;
    const double sig3 = fans.fan_beta_skeleton.sigma3;
    std::vector<TestFunction> dict;
    const auto add_phi = [&dict](double ct, double cx, double radius) {
        TestFunction phi;
        phi.center_t = ct;
        phi.center_x1 = cx;
        phi.radius = radius;
        dict.push_back(phi);
    };
    add_phi(0.5, 0.5 * (s - 1.0), 0.08);                     // inside Omega_-
    add_phi(0.5, 0.25 * (fans.overlap.sigma_right + sig3), 0.04); // inside Omega_delta/Omega_+ band
    add_phi(0.5, 0.5 * (sig3 + 1.0) + 0.5, 0.08);            // inside Omega_+
    add_phi(0.5, 0.5 * sig3, 0.06);                          // across the 3-shock
    add_phi(0.5, 0.5 * s, 0.06);                             // across the 1-shock (skipped side)
    add_phi(0.03, 0.5 * (sig3 + 2.0), 0.08);                 // straddles t = 0
    const VerifyReport vr = verify(nu, dict, mvs_tol);
    if (vr.worst_interface > mvs_tol) rep.failures.push_back("mvs-interfaces");
    if (vr.worst_quadrature > mvs_tol) rep.failures.push_back("mvs-quadrature");
    if (!vr.passed) rep.failures.push_back("mvs-verify");

    // linear identity: interface jumps of a lambda-combination equal the
    // lambda-combination of the jumps
    double linearity = 0.0;
    {
        const AtomicYoungMeasure mu = measure_from_fan(fans.fan_alpha);
        const AtomicYoungMeasure combo = lambda_combination(nu, mu, 0.375);
        const std::vector<InterfaceResidual> ra = interface_residual_exact(nu);
        const std::vector<InterfaceResidual> rb = interface_residual_exact(mu);
        const std::vector<InterfaceResidual> rc = interface_residual_exact(combo);
        for (const InterfaceResidual& ir : rc) {
            if (ir.cls == InterfaceClass::Unverified) continue;
            Vec4 expect{};
            for (const std::vector<InterfaceResidual>* src : {&ra, &rb}) {
                const double w = src == &ra ? 0.375 : 0.625;
                for (const InterfaceResidual& jr : *src) {
                    if (jr.cls == InterfaceClass::Unverified) continue;
                    if (std::abs(jr.sigma - ir.sigma) < 1e-14 * (1.0 + std::abs(ir.sigma)))
                        for (int c = 0; c < 4; ++c) expect[c] += w * jr.jump[c];
                }
            }
            for (int c = 0; c < 4; ++c)
                linearity = std::max(linearity, std::abs(ir.jump[c] - expect[c]));
        }
        if (linearity > 1e-12) rep.failures.push_back("mvs-linearity");
    }

    // 5) rigidity dichotomy on the overlap states (reduced sweep)
    DichotomyOptions dopts;
    dopts.n_list = {1, 4, 16, 64};
    dopts.sphere_points = 16;
    dopts.grid.cells = 128;
    const DichotomyReport dr =
        dichotomy_experiment(fans.overlap.z_alpha, fans.overlap.z_beta, euler_operator(), dopts);
    if (dr.in_cone || !(dr.positive_floor > 0.0)) rep.failures.push_back("dichotomy");

    rep.results = Json{{"constants", to_json(shock_constants(d))},
                       {"worst_rh_residual", worst_rh},
                       {"fan_beta_skeleton", beta_skeleton_json(fans.fan_beta_skeleton)},
                       {"rank_condition", rank_condition_json(rank)},
                       {"margins", Json{{"delta_star", margins.delta_star},
                                        {"eta_star", margins.eta_star},
                                        {"tol", margins.tol}}},
                       {"entropy_margin", entropy_margin},
                       {"mvs", verify_report_json(vr)},
                       {"mvs_linearity_error", linearity},
                       {"dichotomy", dichotomy_json(dr)},
                       {"measure", to_json(nu)}};
    rep.passed = rep.failures.empty();
    std::cerr << (rep.passed ? "PASS" : "FAIL: " + rep.failures.front()) << "\n";

    if (!g.svg_path.empty())
        write_text_file(g.svg_path, wild_svg(fans, "wild construction skeleton"));
    return rep;
}

// --- driver -------------------------------------------------------------------

int emit(const RunReport& rep, const GlobalOptions& g,
         std::chrono::steady_clock::time_point start) {
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    const std::string text = render_report(rep, !g.no_timestamp, wall_ms);
    if (g.out_path.empty()) {
        std::cout << text;
    } else {
        write_text_file(g.out_path, text);
    }
    return rep.passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mvsol: explicit solutions and measure-valued verification for the "
                 "2-D full compressible Euler system"};
    app.require_subcommand(1);

    GlobalOptions g_riemann, g_wavecone, g_construct, g_verify, g_rigidity, g_main;
    RiemannFlags rf_riemann, rf_construct, rf_verify, rf_main;

    // riemann
    CLI::App* c_riemann =
        app.add_subcommand("riemann", "construct the self-similar 1-shock and verify it");
    attach_global_flags(c_riemann, g_riemann);
    auto* o_rr = c_riemann->add_option("--rho-minus", rf_riemann.rho_minus, "left density");
    auto* o_rpm = c_riemann->add_option("--p-minus", rf_riemann.p_minus, "left pressure");
    auto* o_rpp = c_riemann->add_option("--p-plus", rf_riemann.p_plus, "right pressure");

    // wavecone
    CLI::App* c_wavecone =
        app.add_subcommand("wavecone", "wave-cone analysis of a constant-state difference");
    attach_global_flags(c_wavecone, g_wavecone);
    double wc_gamma = 2.0;
    auto* o_wcg = c_wavecone->add_option("--gamma", wc_gamma, "density ratio of the example pair");

    // construct
    CLI::App* c_construct =
        app.add_subcommand("construct", "assemble the two-fan wild-solution skeleton");
    attach_global_flags(c_construct, g_construct);
    auto* o_cr = c_construct->add_option("--rho-minus", rf_construct.rho_minus, "left density");
    auto* o_cpm = c_construct->add_option("--p-minus", rf_construct.p_minus, "left pressure");
    auto* o_cpp = c_construct->add_option("--p-plus", rf_construct.p_plus, "right pressure");
    double construct_delta = 0.01;
    auto* o_cd =
        c_construct->add_option("--delta-p", construct_delta, "pressure perturbation delta_p");

    // verify-mvs
    CLI::App* c_verify =
        app.add_subcommand("verify-mvs", "verify an atomic measure against the weak form");
    attach_global_flags(c_verify, g_verify);
    auto* o_vr = c_verify->add_option("--rho-minus", rf_verify.rho_minus, "left density");
    auto* o_vpm = c_verify->add_option("--p-minus", rf_verify.p_minus, "left pressure");
    auto* o_vpp = c_verify->add_option("--p-plus", rf_verify.p_plus, "right pressure");
    int random_fans = 0;
    c_verify->add_option("--random-fans", random_fans,
                         "also run the quadrature/exact-reduction consistency sweep");

    // rigidity
    CLI::App* c_rigidity =
        app.add_subcommand("rigidity", "plane-wave rigidity and Young-measure experiments");
    attach_global_flags(c_rigidity, g_rigidity);
    double rig_gamma = 2.0;
    auto* o_rg = c_rigidity->add_option("--gamma", rig_gamma, "density ratio of the example pair");
    std::vector<int> rig_n_list;
    c_rigidity->add_option("--n-list", rig_n_list, "oscillation frequencies")->delimiter(',');
    std::string rig_profile = "square";
    c_rigidity->add_option("--profile", rig_profile, "oscillation profile (square|sine)")
        ->check(CLI::IsMember({"square", "sine"}));
    double rig_duty = 0.5;
    c_rigidity->add_option("--duty", rig_duty, "square-wave duty in (0,1)");
    double rig_r = 4.0 / 3.0;
    c_rigidity->add_option("--r", rig_r, "Lebesgue exponent in (1, 3/2)");
    int rig_grid = 256;
    c_rigidity->add_option("--grid", rig_grid, "sampling grid cells per axis");
    std::string rig_csv;
    c_rigidity->add_option("--csv", rig_csv, "write the (n, residual, TV) curve to this file");

    // main-theorem
    CLI::App* c_main = app.add_subcommand(
        "main-theorem", "end-to-end certificate chain for the non-generability scenario");
    attach_global_flags(c_main, g_main);
    auto* o_mr = c_main->add_option("--rho-minus", rf_main.rho_minus, "left density");
    auto* o_mpm = c_main->add_option("--p-minus", rf_main.p_minus, "left pressure");
    auto* o_mpp = c_main->add_option("--p-plus", rf_main.p_plus, "right pressure");
    double main_delta = 0.01;
    auto* o_md = c_main->add_option("--delta-p", main_delta, "pressure perturbation delta_p");
    bool main_constant = false;
    c_main->add_flag("--constant-states", main_constant,
                     "run the constant-state (gamma example) scenario instead");
    double main_gamma = 2.0;
    auto* o_mg = c_main->add_option("--gamma", main_gamma,
                                    "density ratio for --constant-states");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        if (c_riemann->parsed()) {
            g_riemann.tol_set = c_riemann->count("--tol") > 0;
            rf_riemann.rho_set = o_rr->count() > 0;
            rf_riemann.pm_set = o_rpm->count() > 0;
            rf_riemann.pp_set = o_rpp->count() > 0;
            return emit(run_riemann(g_riemann, rf_riemann), g_riemann, start);
        }
        if (c_wavecone->parsed()) {
            g_wavecone.tol_set = c_wavecone->count("--tol") > 0;
            return emit(run_wavecone(g_wavecone, wc_gamma, o_wcg->count() > 0), g_wavecone,
                        start);
        }
        if (c_construct->parsed()) {
            g_construct.tol_set = c_construct->count("--tol") > 0;
            rf_construct.rho_set = o_cr->count() > 0;
            rf_construct.pm_set = o_cpm->count() > 0;
            rf_construct.pp_set = o_cpp->count() > 0;
            return emit(run_construct(g_construct, rf_construct, construct_delta,
                                      o_cd->count() > 0),
                        g_construct, start);
        }
        if (c_verify->parsed()) {
            g_verify.tol_set = c_verify->count("--tol") > 0;
            rf_verify.rho_set = o_vr->count() > 0;
            rf_verify.pm_set = o_vpm->count() > 0;
            rf_verify.pp_set = o_vpp->count() > 0;
            return emit(run_verify_mvs(g_verify, rf_verify, random_fans), g_verify, start);
        }
        if (c_rigidity->parsed()) {
            g_rigidity.tol_set = c_rigidity->count("--tol") > 0;
            return emit(run_rigidity(g_rigidity, rig_gamma, o_rg->count() > 0, rig_n_list,
                                     rig_profile, rig_duty, rig_r, rig_grid, rig_csv),
                        g_rigidity, start);
        }
        if (c_main->parsed()) {
            g_main.tol_set = c_main->count("--tol") > 0;
            rf_main.rho_set = o_mr->count() > 0;
            rf_main.pm_set = o_mpm->count() > 0;
            rf_main.pp_set = o_mpp->count() > 0;
            return emit(run_main_theorem(g_main, rf_main, main_delta, o_md->count() > 0,
                                         main_constant, main_gamma, o_mg->count() > 0),
                        g_main, start);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
