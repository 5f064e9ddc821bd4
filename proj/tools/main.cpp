// Command-line front end: verify the reference table, evaluate a mechanism
// from JSON, sweep the eps family, and run the constrained grid search.
// Exit codes: 0 success, 1 verification mismatch, 2 input error.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hotshare/equilibrium.hpp"
#include "hotshare/errors.hpp"
#include "hotshare/json_io.hpp"
#include "hotshare/mechanisms.hpp"
#include "hotshare/oracle.hpp"
#include "hotshare/welfare.hpp"

namespace {

using namespace hotshare;

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// Stdout by default, or --out path.
struct Sink {
    std::ofstream file;
    std::ostream* os = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path, std::ios::binary);
        if (!file) throw BadParam("cannot open output file: " + path);
        os = &file;
    }
    std::ostream& out() { return *os; }
};

// --- frozen CSV row schema -------------------------------------------------------

void row_header(std::ostream& os) {
    os << "param,p_A,p_B,pi_A,pi_B,joint,CW,ir_A,ir_B,jointly_ir,pareto,strict,"
          "p_A_dec,p_B_dec,pi_A_dec,pi_B_dec,joint_dec,CW_dec\n";
}

void row_emit(std::ostream& os, const std::string& param, const EquilibriumOutcome& o,
              const ParetoVerdict& v) {
    Rat joint = o.pi_A + o.pi_B;
    os << csv_field(param) << ',' << rat_to_string(o.prices.p_A) << ','
       << rat_to_string(o.prices.p_B) << ',' << rat_to_string(o.pi_A) << ','
       << rat_to_string(o.pi_B) << ',' << rat_to_string(joint) << ',' << rat_to_string(o.cw)
       << ',' << (v.ir_A ? 1 : 0) << ',' << (v.ir_B ? 1 : 0) << ',' << (v.jointly_ir ? 1 : 0)
       << ',' << (v.pareto_improving ? 1 : 0) << ',' << (v.strict ? 1 : 0) << ','
       << rat_to_decimal(o.prices.p_A) << ',' << rat_to_decimal(o.prices.p_B) << ','
       << rat_to_decimal(o.pi_A) << ',' << rat_to_decimal(o.pi_B) << ','
       << rat_to_decimal(joint) << ',' << rat_to_decimal(o.cw) << '\n';
}

void schedule_table(std::ostream& os, const EquilibriumOutcome& o) {
    os << "\nfirm,segment,x0,x1,slope,intercept\n";
    for (const MaskedSchedule& s : o.prices.schedules)
        for (const PLPiece& p : s.prices.pieces())
            os << firm_name(s.firm) << ',' << segment_name(s.segment) << ','
               << rat_to_string(p.x0) << ',' << rat_to_string(p.x1) << ','
               << rat_to_string(p.slope) << ',' << rat_to_string(p.icept) << '\n';
}

nlohmann::ordered_json rat_json(const Rat& x) { return rat_to_string(x); }

nlohmann::ordered_json intervals_json(const IntervalSet& s) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [a, b] : s.intervals())
        arr.push_back({rat_to_string(a), rat_to_string(b)});
    return arr;
}

nlohmann::ordered_json outcome_json(const EquilibriumOutcome& o, const ParetoVerdict& v) {
    nlohmann::ordered_json j;
    j["v"] = rat_json(o.config.v);
    j["t"] = rat_json(o.config.t);
    j["mechanism"] = {{"share_B_to_A", intervals_json(o.mechanism.share_B_to_A)},
                      {"share_A_to_B", intervals_json(o.mechanism.share_A_to_B)}};
    j["p_A"] = rat_json(o.prices.p_A);
    j["p_B"] = rat_json(o.prices.p_B);
    j["pi_A"] = rat_json(o.pi_A);
    j["pi_B"] = rat_json(o.pi_B);
    j["joint"] = rat_json(o.pi_A + o.pi_B);
    j["CW"] = rat_json(o.cw);
    j["transport"] = rat_json(o.transport);
    j["p_A_dec"] = rat_to_decimal(o.prices.p_A);
    j["p_B_dec"] = rat_to_decimal(o.prices.p_B);
    j["pi_A_dec"] = rat_to_decimal(o.pi_A);
    j["pi_B_dec"] = rat_to_decimal(o.pi_B);
    j["joint_dec"] = rat_to_decimal(o.pi_A + o.pi_B);
    j["CW_dec"] = rat_to_decimal(o.cw);
    j["verdict"] = {{"ir_A", v.ir_A},
                    {"ir_B", v.ir_B},
                    {"jointly_ir", v.jointly_ir},
                    {"consumers_no_worse", v.consumers_no_worse},
                    {"pareto_improving", v.pareto_improving},
                    {"strict", v.strict}};
    nlohmann::ordered_json scheds = nlohmann::ordered_json::array();
    for (const MaskedSchedule& s : o.prices.schedules) {
        nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
        for (const PLPiece& p : s.prices.pieces())
            pieces.push_back({{"x0", rat_to_string(p.x0)},
                              {"x1", rat_to_string(p.x1)},
                              {"slope", rat_to_string(p.slope)},
                              {"intercept", rat_to_string(p.icept)}});
        scheds.push_back({{"firm", firm_name(s.firm)},
                          {"segment", segment_name(s.segment)},
                          {"pieces", pieces}});
    }
    j["schedules"] = scheds;
    j["method"] = o.diagnostics.method;
    return j;
}

// --- verify ----------------------------------------------------------------------

struct VerifyRow {
    std::string scenario, quantity, reference, engine, oracle;
    bool pass = false;
};

int cmd_verify(const Rat& v, const Rat& t) {
    std::vector<VerifyRow> rows;
    const double t_f = t.get_d();
    for (Scenario s : all_scenarios()) {
        EquilibriumOutcome ref = closed_form_reference(s, v, t);
        EquilibriumOutcome eng =
            solve_equilibrium(scenario_mechanism(s), scenario_config(s, v, t));
        OracleOutcome orc = grid_equilibrium(scenario_mechanism(s), scenario_config(s, v, t),
                                             1e-3 * t_f, 10000);
        auto add = [&](const char* q, const Rat& want, const Rat& got, double approx) {
            rows.push_back(VerifyRow{scenario_name(s), q, rat_to_string(want),
                                     rat_to_string(got), fmt_double(approx), want == got});
        };
        add("p_A", ref.prices.p_A, eng.prices.p_A, orc.p_A);
        add("p_B", ref.prices.p_B, eng.prices.p_B, orc.p_B);
        add("pi_A", ref.pi_A, eng.pi_A, orc.pi_A);
        add("pi_B", ref.pi_B, eng.pi_B, orc.pi_B);
        add("CW", ref.cw, eng.cw, orc.cw);
    }

    // Appendix-style consistency rows on the symmetric four-segment market.
    MarketConfig four = MarketConfig::four_segment(v, t);
    AppendixResult app = appendix_firm_optimal(four);
    SharingMechanism firmopt = scenario_mechanism(Scenario::FourSegFirmOpt);
    rows.push_back(VerifyRow{"appendix-4seg", "interval_B",
                             firmopt.share_B_to_A.to_string(), app.plan.interval_B.to_string(),
                             "-", app.plan.interval_B == firmopt.share_B_to_A});
    rows.push_back(VerifyRow{"appendix-4seg", "interval_A",
                             firmopt.share_A_to_B.to_string(), app.plan.interval_A.to_string(),
                             "-", app.plan.interval_A == firmopt.share_A_to_B});
    rows.push_back(VerifyRow{"appendix-4seg", "ir_ok", "true", app.ir_ok ? "true" : "false",
                             "-", app.ir_ok});

    auto [gp_A, gp_B] = no_sharing_prices_general(frac(1, 4), frac(1, 4), frac(1, 4), t);
    EquilibriumOutcome base4 = solve_equilibrium(SharingMechanism::none(), four);
    rows.push_back(VerifyRow{"no-sharing-formula", "p_A", rat_to_string(base4.prices.p_A),
                             rat_to_string(gp_A), "-", gp_A == base4.prices.p_A});
    rows.push_back(VerifyRow{"no-sharing-formula", "p_B", rat_to_string(base4.prices.p_B),
                             rat_to_string(gp_B), "-", gp_B == base4.prices.p_B});

    // Boundary masses q_A = 3 q_B, q_no-info = 0: the IR integral binds with equality.
    MarketConfig edge =
        MarketConfig::uniform(v, t, frac(3, 5), frac(1, 5), Rat(0), frac(1, 5));
    AppendixResult app_edge = appendix_firm_optimal(edge);
    rows.push_back(VerifyRow{"mass-ratio-boundary", "gain_A == loss_A",
                             rat_to_string(app_edge.plan.ir_rhs_A),
                             rat_to_string(app_edge.plan.ir_lhs_A), "-",
                             app_edge.plan.ir_lhs_A == app_edge.plan.ir_rhs_A});
    rows.push_back(VerifyRow{"mass-ratio-boundary", "ratio_check", "true",
                             mass_ratio_ir_check(frac(3, 5), frac(1, 5)) ? "true" : "false",
                             "-", mass_ratio_ir_check(frac(3, 5), frac(1, 5))});

    size_t w_s = 8, w_q = 8, w_r = 9, w_e = 6, w_o = 6;
    for (const VerifyRow& r : rows) {
        w_s = std::max(w_s, r.scenario.size());
        w_q = std::max(w_q, r.quantity.size());
        w_r = std::max(w_r, r.reference.size());
        w_e = std::max(w_e, r.engine.size());
        w_o = std::max(w_o, r.oracle.size());
    }
    std::cout << std::left << std::setw(static_cast<int>(w_s) + 2) << "scenario"
              << std::setw(static_cast<int>(w_q) + 2) << "quantity"
              << std::setw(static_cast<int>(w_r) + 2) << "reference"
              << std::setw(static_cast<int>(w_e) + 2) << "engine"
              << std::setw(static_cast<int>(w_o) + 2) << "oracle"
              << "status\n";
    size_t failures = 0;
    for (const VerifyRow& r : rows) {
        std::cout << std::left << std::setw(static_cast<int>(w_s) + 2) << r.scenario
                  << std::setw(static_cast<int>(w_q) + 2) << r.quantity
                  << std::setw(static_cast<int>(w_r) + 2) << r.reference
                  << std::setw(static_cast<int>(w_e) + 2) << r.engine
                  << std::setw(static_cast<int>(w_o) + 2) << r.oracle
                  << (r.pass ? "PASS" : "FAIL") << '\n';
        if (!r.pass) ++failures;
    }
    if (failures == 0) {
        std::cout << "all " << rows.size() << " checks passed\n";
        return 0;
    }
    std::cout << failures << " of " << rows.size() << " checks FAILED\n";
    return 1;
}

// --- eval ------------------------------------------------------------------------

int cmd_eval(const std::string& config_path, const std::string& mechanism_path,
             const std::string& canonical, const std::string& eps_text, bool allow_oor,
             const std::string& format, const std::string& out_path) {
    LoadedConfig loaded = load_config_file(config_path);
    SharingMechanism mech; // defaults to no sharing
    std::string label = "no-sharing";
    if (!mechanism_path.empty()) {
        mech = load_mechanism_file(mechanism_path);
        label = mechanism_path;
    } else if (!canonical.empty()) {
        Rat eps = eps_text.empty() ? frac(1, 8) : parse_rational(eps_text);
        mech = canonical_mechanism(canonical, loaded.config, eps, allow_oor);
        label = canonical;
    } else if (loaded.has_mechanism) {
        mech = loaded.mechanism;
        label = "embedded";
    }

    EquilibriumOutcome outcome = solve_equilibrium(mech, loaded.config);
    EquilibriumOutcome baseline = solve_equilibrium(SharingMechanism::none(), loaded.config);
    ParetoVerdict verdict = pareto_compare(outcome, baseline, loaded.config);

    Sink sink;
    sink.open(out_path);
    if (format == "json") {
        sink.out() << outcome_json(outcome, verdict).dump(2) << '\n';
    } else {
        row_header(sink.out());
        row_emit(sink.out(), label, outcome, verdict);
        schedule_table(sink.out(), outcome);
    }
    return 0;
}

// --- sweep -----------------------------------------------------------------------

int cmd_sweep(const std::string& config_path, const std::string& param, const std::string& from,
              const std::string& to, int steps, bool allow_extrapolation,
              const std::string& out_path) {
    if (param != "eps") throw BadParam("only --param eps is supported");
    if (steps < 1) throw BadParam("--steps must be at least 1");
    LoadedConfig loaded = load_config_file(config_path);
    Rat a = parse_rational(from), b = parse_rational(to);
    if (a > b) throw BadRange("sweep range is empty: from > to");
    if (!allow_extrapolation && !(a > Rat(0) && b <= frac(1, 4)))
        throw BadRange("eps range must lie inside (0, 1/4]; pass --allow-extrapolation to leave it");
    if (!(a > Rat(0) && b < frac(1, 2)))
        throw BadRange("eps must stay inside (0, 1/2) for the interval [eps, 1/2) to exist");

    EquilibriumOutcome baseline = solve_equilibrium(SharingMechanism::none(), loaded.config);
    Sink sink;
    sink.open(out_path);
    row_header(sink.out());
    for (int i = 0; i < steps; ++i) {
        Rat eps = steps == 1 ? a : a + (b - a) * i / (steps - 1);
        SharingMechanism mech{IntervalSet::single(eps, frac(1, 2)), IntervalSet::empty_set()};
        EquilibriumOutcome outcome = solve_equilibrium(mech, loaded.config);
        ParetoVerdict verdict = pareto_compare(outcome, baseline, loaded.config);
        row_emit(sink.out(), rat_to_string(eps), outcome, verdict);
    }
    return 0;
}

// --- search ----------------------------------------------------------------------

std::pair<std::string, std::string> side_endpoints(const IntervalSet& s) {
    if (s.empty()) return {"", ""};
    const auto& iv = s.intervals().front();
    return {rat_to_string(iv.first), rat_to_string(iv.second)};
}

int cmd_search(const std::string& config_path, const std::string& constraint_name,
               const std::string& objective_name, const std::string& resolution_text,
               const std::string& frontier_path, const std::string& all_points_path,
               const std::string& out_path) {
    LoadedConfig loaded = load_config_file(config_path);
    Rat r = parse_rational(resolution_text);
    if (!(r > Rat(0) && r <= frac(1, 12)))
        throw BadParam("resolution must lie in (0, 1/12]");
    SearchConstraint constraint = search_constraint_from_name(constraint_name);
    SearchObjective objective = search_objective_from_name(objective_name);

    SearchEngine engine(loaded.config, r);
    SearchResult res = engine.run(constraint, objective);

    Sink sink;
    sink.open(out_path);
    std::ostream& os = sink.out();
    const EquilibriumOutcome& o = res.best_outcome;
    os << "constraint: " << constraint_name << "\nobjective: " << objective_name
       << "\nresolution: " << rat_to_string(r) << "\nmechanisms scanned: "
       << res.stats.mechanisms_scanned << "\nfeasible (scan precision): " << res.stats.feasible
       << "\nexact re-solves: " << res.stats.exact_solves
       << "\nscan certification failures: " << res.stats.float_failures << "\n\n";
    os << "best mechanism: " << res.best.to_string() << '\n';
    os << "  p_A = " << rat_to_string(o.prices.p_A) << " (" << rat_to_decimal(o.prices.p_A)
       << ")\n  p_B = " << rat_to_string(o.prices.p_B) << " (" << rat_to_decimal(o.prices.p_B)
       << ")\n  pi_A = " << rat_to_string(o.pi_A) << " (" << rat_to_decimal(o.pi_A)
       << ")\n  pi_B = " << rat_to_string(o.pi_B) << " (" << rat_to_decimal(o.pi_B)
       << ")\n  joint = " << rat_to_string(o.pi_A + o.pi_B) << " ("
       << rat_to_decimal(o.pi_A + o.pi_B) << ")\n  CW = " << rat_to_string(o.cw) << " ("
       << rat_to_decimal(o.cw) << ")\n";
    const ParetoVerdict& v = res.best_verdict;
    os << "  verdict: ir_A=" << v.ir_A << " ir_B=" << v.ir_B << " jointly_ir=" << v.jointly_ir
       << " consumers_no_worse=" << v.consumers_no_worse << " pareto=" << v.pareto_improving
       << " strict=" << v.strict << '\n';

    if (!frontier_path.empty()) {
        std::ofstream f(frontier_path, std::ios::binary);
        if (!f) throw BadParam("cannot open frontier output file: " + frontier_path);
        f << "share_B_lo,share_B_hi,share_A_lo,share_A_hi,joint,CW\n";
        char buf[64];
        for (const FrontierPoint& p : res.frontier) {
            auto [bl, bh] = side_endpoints(p.mechanism.share_B_to_A);
            auto [al, ah] = side_endpoints(p.mechanism.share_A_to_B);
            std::snprintf(buf, sizeof buf, "%.12g,%.12g", p.joint, p.cw);
            f << bl << ',' << bh << ',' << al << ',' << ah << ',' << buf << '\n';
        }
        os << "\nfrontier: " << res.frontier.size() << " points -> " << frontier_path << '\n';
    }
    if (!all_points_path.empty()) {
        std::ofstream f(all_points_path, std::ios::binary);
        if (!f) throw BadParam("cannot open all-points output file: " + all_points_path);
        engine.write_all_points(f);
        os << "all points -> " << all_points_path << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-stage duopoly pricing with interval data sharing: solve, verify, sweep, "
                 "and search mechanisms"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "Check the closed-form table against the exact "
                                                "engine and the grid oracle");
    std::string v_text = "3", t_text = "1";
    verify->add_option("--v", v_text, "valuation v (rational, default 3)");
    verify->add_option("--t", t_text, "transport cost t (rational, default 1)");

    auto* eval = app.add_subcommand("eval", "Solve one mechanism on a JSON config and report");
    std::string cfg_path, mech_path, canonical, eps_text, format = "csv", out_path;
    bool allow_oor = false;
    eval->add_option("--config", cfg_path, "JSON market config")->required();
    eval->add_option("--mechanism", mech_path, "JSON mechanism file");
    eval->add_option("--canonical", canonical,
                     "named mechanism: no-sharing|full-sharing|1seg-eps|1seg-firmopt|"
                     "2seg-consumeropt|2seg-firmopt|4seg-consumeropt|4seg-firmopt");
    eval->add_option("--eps", eps_text, "eps for 1seg-eps (rational, default 1/8)");
    eval->add_flag("--allow-out-of-range", allow_oor, "accept eps outside (0, 1/4]");
    eval->add_option("--format", format, "csv (default) or json")
        ->check(CLI::IsMember({"csv", "json"}));
    eval->add_option("--out", out_path, "write to file instead of stdout");

    auto* sweep = app.add_subcommand("sweep", "Solve the [eps, 1/2) sharing family over a range");
    std::string s_cfg, s_param = "eps", s_from, s_to, s_out;
    int s_steps = 25;
    bool s_extra = false;
    sweep->add_option("--config", s_cfg, "JSON market config")->required();
    sweep->add_option("--param", s_param, "swept parameter (only: eps)");
    sweep->add_option("--from", s_from, "range start (rational)")->required();
    sweep->add_option("--to", s_to, "range end (rational)")->required();
    sweep->add_option("--steps", s_steps, "row count (default 25)");
    sweep->add_flag("--allow-extrapolation", s_extra, "permit eps outside (0, 1/4]");
    sweep->add_option("--out", s_out, "write to file instead of stdout");

    auto* search = app.add_subcommand("search", "Exhaustive grid search over single-interval "
                                                "mechanisms");
    std::string g_cfg, g_constraint, g_objective, g_res = "1/96", g_frontier = "frontier.csv";
    std::string g_all, g_out;
    search->add_option("--config", g_cfg, "JSON market config")->required();
    search->add_option("--constraint", g_constraint, "no-harm | joint-ir | none")->required();
    search->add_option("--objective", g_objective, "profit | cw")->required();
    search->add_option("--resolution", g_res, "grid spacing (rational <= 1/12, default 1/96)");
    search->add_option("--frontier-out", g_frontier,
                       "frontier CSV path (default frontier.csv, empty to skip)");
    search->add_option("--all-points", g_all, "write every scanned point to this CSV");
    search->add_option("--out", g_out, "write the report to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) return cmd_verify(parse_rational(v_text), parse_rational(t_text));
        if (*eval)
            return cmd_eval(cfg_path, mech_path, canonical, eps_text, allow_oor, format,
                            out_path);
        if (*sweep) return cmd_sweep(s_cfg, s_param, s_from, s_to, s_steps, s_extra, s_out);
        if (*search)
            return cmd_search(g_cfg, g_constraint, g_objective, g_res, g_frontier, g_all, g_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
