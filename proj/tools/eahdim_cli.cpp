// Command line front end: reads a JSON config document, dispatches to the
// library, and emits machine-readable JSON/CSV reports with fixed formatting.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eahdim/dimension.hpp"
#include "eahdim/errors.hpp"
#include "eahdim/ifs.hpp"
#include "eahdim/match.hpp"
#include "eahdim/oracle.hpp"
#include "eahdim/serialize.hpp"
#include "eahdim/target.hpp"

using nlohmann::json;
using namespace eahdim;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string out_path;
    std::string format;  // "", "json" or "csv"
    int threads = 1;
};

json load_config(const std::string& path) {
    if (path.empty()) throw input_error("no config given; use --config <path>");
    std::ifstream in(path);
    if (!in) throw input_error("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw input_error(std::string("config is not valid JSON: ") + e.what());
    }
}

Word word_from_json(const json& arr, const char* what) {
    if (!arr.is_array()) throw input_error(std::string(what) + " must be an array of letters");
    Word w;
    for (const auto& x : arr) {
        if (!x.is_number_integer()) throw input_error(std::string(what) + ": letters are integers");
        w.push_back(x.get<Letter>());
    }
    return w;
}

IfsSpec ifs_from_config(const json& cfg) {
    if (!cfg.contains("ifs")) throw input_error("config is missing \"ifs\"");
    const json& j = cfg.at("ifs");
    if (j.contains("ratios") && !j.contains("oracle")) {
        std::vector<double> ratios;
        for (const auto& r : j.at("ratios")) ratios.push_back(r.get<double>());
        return IfsSpec::similarity(std::move(ratios));
    }
    if (j.contains("oracle")) {
        const std::string name = j.at("oracle").get<std::string>();
        const double log_k = j.value("distortion_log_K", 0.0);
        std::vector<double> ratios;
        if (name == "binary_half") {
            ratios = {0.5, 0.5};
        } else if (name == "half_quarter") {
            ratios = {0.5, 0.25};
        } else if (name == "thirds") {
            ratios = {1.0 / 3.0, 1.0 / 3.0};
        } else if (name == "wrapped_similarity") {
            if (!j.contains("ratios")) throw input_error("wrapped_similarity needs \"ratios\"");
            for (const auto& r : j.at("ratios")) ratios.push_back(r.get<double>());
        } else {
            throw input_error("unknown oracle \"" + name +
                              "\" (builtins: binary_half, half_quarter, thirds, wrapped_similarity)");
        }
        return as_conformal_oracle(IfsSpec::similarity(std::move(ratios)), log_k);
    }
    throw input_error("\"ifs\" needs either \"ratios\" or \"oracle\"");
}

TargetSpec target_from_config(const json& cfg) {
    if (!cfg.contains("target")) throw input_error("config is missing \"target\"");
    const json& j = cfg.at("target");
    const std::string type = j.value("type", "");
    if (type == "periodic") return TargetSpec::periodic(word_from_json(j.at("word"), "target word"));
    if (type == "explicit")
        return TargetSpec::explicit_prefix(word_from_json(j.at("prefix"), "target prefix"),
                                           j.value("tail_fill", 1));
    if (type == "doubling") {
        Word head = j.contains("head") ? word_from_json(j.at("head"), "target head") : Word{};
        Letter a = 1, b = 2;
        if (j.contains("block_letters")) {
            const auto bl = word_from_json(j.at("block_letters"), "block_letters");
            if (bl.size() != 2) throw input_error("block_letters needs exactly two letters");
            a = bl[0];
            b = bl[1];
        }
        return TargetSpec::doubling_blocks(std::move(head), a, b);
    }
    throw input_error("target type must be periodic, explicit or doubling");
}

void check_target_letters(const TargetSpec& t, const IfsSpec& ifs) {
    if (t.max_letter() > ifs.alphabet_size())
        throw input_error("target letters exceed the IFS alphabet size");
}

PressureSolverConfig solver_from_config(const json& cfg) {
    PressureSolverConfig sc;
    if (cfg.contains("solver")) {
        const json& j = cfg.at("solver");
        sc.abs_tol = j.value("abs_tol", sc.abs_tol);
        sc.max_iter = j.value("max_iter", sc.max_iter);
        sc.s_upper_seed = j.value("s_upper_seed", sc.s_upper_seed);
    }
    return sc;
}

ThetaSearchConfig search_from_config(const json& cfg) {
    ThetaSearchConfig tc;
    tc.solver = solver_from_config(cfg);
    if (cfg.contains("params")) {
        const json& p = cfg.at("params");
        tc.coarse_points = p.value("coarse_points", tc.coarse_points);
        tc.theta_tol = p.value("theta_tol", tc.theta_tol);
        tc.M_lo = p.value("M_lo", tc.M_lo);
        tc.M_hi = p.value("M_hi", tc.M_hi);
        tc.stride = p.value("stride", tc.stride);
    }
    return tc;
}

WindowFn window_from_params(const json& p) {
    if (p.contains("window")) {
        const std::string w = p.at("window").get<std::string>();
        if (w == "quadratic") return quadratic_window();
        if (w == "zero") return zero_window();
        throw input_error("window must be \"zero\" or \"quadratic\" (or use window_v)");
    }
    if (p.contains("window_v")) return linear_window(p.at("window_v").get<double>());
    if (p.contains("v")) return linear_window(p.at("v").get<double>());
    throw input_error("no window given: set params.window_v, params.window or params.v");
}

Semantics semantics_from(const std::string& s) {
    if (s == "optimistic") return Semantics::Optimistic;
    if (s == "pessimistic") return Semantics::Pessimistic;
    throw input_error("semantics must be optimistic or pessimistic");
}

std::string null_case_json(CaseTag tag) {
    std::string out = "{\n";
    out += "  \"dim_lambda\": null,\n";
    out += "  \"theta_grid\": [],\n";
    out += "  \"s_hat_plus\": null,\n";
    out += "  \"s_hat_minus\": null,\n";
    out += "  \"omega_plus_bound\": null,\n";
    out += "  \"omega_minus_bound\": null,\n";
    out += "  \"case\": \"" + case_tag_name(tag) + "\",\n";
    out += "  \"condition5_holds\": null,\n";
    out += "  \"theta_star_plus\": null,\n";
    out += "  \"theta_star_minus\": null\n";
    out += "}\n";
    return out;
}

void emit(const GlobalOpts& g, const std::string& text) {
    if (g.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out_path, std::ios::binary);
    if (!out) throw input_error("cannot open output file: " + g.out_path);
    out << text;
}

// ---- subcommands -----------------------------------------------------------

std::string run_dim(const json& cfg) {
    const json& p = cfg.at("params");
    if (p.contains("window") && p.at("window").get<std::string>() == "quadratic")
        return null_case_json(CaseTag::Countable);
    if (!p.contains("v")) throw input_error("dim needs params.v");
    const double v = p.at("v").get<double>();
    const CaseTag tag = classify_case(v);
    if (tag != CaseTag::Range01) return null_case_json(tag);

    const IfsSpec ifs = ifs_from_config(cfg);
    const TargetSpec t = target_from_config(cfg);
    check_target_letters(t, ifs);
    const DimensionReport rep = omega_bounds(ifs, t, v, search_from_config(cfg));
    return dimension_report_json(rep);
}

std::string run_sweep(const json& cfg, int threads) {
    const IfsSpec ifs = ifs_from_config(cfg);
    const TargetSpec t = target_from_config(cfg);
    check_target_letters(t, ifs);
    const ThetaSearchConfig tc = search_from_config(cfg);
    const json& p = cfg.at("params");

    std::vector<double> grid;
    if (p.contains("v_grid")) {
        for (const auto& x : p.at("v_grid")) grid.push_back(x.get<double>());
    } else if (p.contains("v_start") && p.contains("v_end") && p.contains("v_step")) {
        const double a = p.at("v_start").get<double>();
        const double b = p.at("v_end").get<double>();
        const double h = p.at("v_step").get<double>();
        if (!(h > 0.0)) throw input_error("v_step must be positive");
        for (double v = a; v <= b + 1e-12; v += h) grid.push_back(std::min(v, 1.0));
    } else {
        throw input_error("sweep needs params.v_grid or v_start/v_end/v_step");
    }
    std::sort(grid.begin(), grid.end());
    for (double v : grid)
        if (!(v >= 0.0 && v <= 1.0)) throw input_error("sweep rates must lie in [0,1]");

    std::vector<std::string> rows(grid.size());
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(grid.size())));
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            rows[i] = sweep_csv_row(grid[i], omega_bounds(ifs, t, grid[i], tc));
        }
    };
    if (workers == 1) {
        work();
    } else {
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::string out = sweep_csv_header();
    for (const auto& r : rows) out += r;
    return out;
}

std::string run_rates(const json& cfg) {
    const TargetSpec t = target_from_config(cfg);
    const json& p = cfg.at("params");
    const int tail_window = p.value("tail_window", 8);

    Word e;
    if (p.contains("sequence") && p.at("sequence").contains("word")) {
        e = word_from_json(p.at("sequence").at("word"), "sequence word");
    } else if (p.contains("sequence") && p.at("sequence").contains("witness")) {
        const json& w = p.at("sequence").at("witness");
        const auto depth = w.value("depth", std::int64_t{100000});
        const int S = w.value("S", 2);
        e = build_witness(t, w.at("theta").get<double>(), w.at("v").get<double>(), depth, S)
                .witness_prefix;
    } else {
        throw input_error("rates needs params.sequence.word or params.sequence.witness");
    }
    const MatchDecomposition d = decompose_matches(e, t);
    return rate_estimate_json(estimate_rates(d, tail_window));
}

std::string run_check_g(const json& cfg) {
    const TargetSpec t = target_from_config(cfg);
    const json& p = cfg.at("params");
    const auto N0 = p.value("N0", std::int64_t{1});
    if (!p.contains("n_max")) throw input_error("check-g needs params.n_max");
    return rigidity_check_json(edit_rigid_up_to(t, N0, p.at("n_max").get<std::int64_t>()));
}

std::string run_witness(const json& cfg) {
    const TargetSpec t = target_from_config(cfg);
    const json& p = cfg.at("params");
    int S = p.value("S", 0);
    if (S == 0 && cfg.contains("ifs")) S = ifs_from_config(cfg).alphabet_size();
    if (S == 0) S = 2;
    const auto depth = p.value("depth", std::int64_t{1000});
    const WitnessConstruction lc =
        build_witness(t, p.at("theta").get<double>(), p.at("v").get<double>(), depth, S);
    return witness_json(lc, p.value("include_witness", true));
}

std::string run_count(const json& cfg, const std::string& format) {
    const TargetSpec t = target_from_config(cfg);
    const json& p = cfg.at("params");
    int S = p.value("S", 0);
    if (S == 0 && cfg.contains("ifs")) S = ifs_from_config(cfg).alphabet_size();
    if (S == 0) throw input_error("count needs params.S or an ifs block");
    const WindowFn window = window_from_params(p);

    std::int64_t n_lo, n_hi;
    if (p.contains("n")) {
        n_lo = n_hi = p.at("n").get<std::int64_t>();
    } else if (p.contains("n_lo") && p.contains("n_hi")) {
        n_lo = p.at("n_lo").get<std::int64_t>();
        n_hi = p.at("n_hi").get<std::int64_t>();
    } else {
        throw input_error("count needs params.n or params.n_lo/n_hi");
    }

    CountMethod method = CountMethod::Auto;
    if (p.contains("method")) {
        const std::string m = p.at("method").get<std::string>();
        if (m == "enumeration") method = CountMethod::Enumeration;
        else if (m == "automaton") method = CountMethod::Automaton;
        else if (m != "auto") throw input_error("method must be auto, enumeration or automaton");
    }

    std::vector<Semantics> sems;
    const std::string sem = p.value("semantics", "both");
    if (sem == "both") {
        sems = {Semantics::Pessimistic, Semantics::Optimistic};
    } else {
        sems = {semantics_from(sem)};
    }

    std::vector<CountResult> rows;
    for (std::int64_t n = n_lo; n <= n_hi; ++n)
        for (Semantics s : sems) rows.push_back(count_eah_words(S, t, window, n, s, method));
    return format == "json" ? count_results_json(rows) : count_results_csv(rows);
}

std::string run_gapcheck(const json& cfg) {
    const IfsSpec ifs = ifs_from_config(cfg);
    const TargetSpec t = target_from_config(cfg);
    check_target_letters(t, ifs);
    const json& p = cfg.at("params");
    std::vector<double> deltas;
    if (p.contains("deltas")) {
        for (const auto& d : p.at("deltas")) deltas.push_back(d.get<double>());
    } else {
        deltas = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    }
    const GapBoundReport rep =
        gap_bound_check(ifs, t, p.at("theta").get<double>(), p.at("v").get<double>(), deltas,
                        search_from_config(cfg));
    return gap_report_json(rep);
}

std::string run_pressure(const json& cfg) {
    const IfsSpec ifs = ifs_from_config(cfg);
    const json& p = cfg.at("params");
    if (!p.contains("s")) throw input_error("pressure needs params.s");
    const double s = p.at("s").get<double>();
    if (ifs.is_similarity())
        return pressure_value_json(s, pressure(ifs, s), pressure_derivative(ifs, s));
    const auto n = p.value("n", std::int64_t{8});
    const auto [lo, hi] = pressure_bracket(ifs, s, n);
    return pressure_bracket_json(s, n, lo, hi);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dimension bounds for eventually-always-hitting sets of IFS attractors"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "JSON config document")->required(false);
    app.add_option("--out", g.out_path, "output path (default stdout)");
    app.add_option("--format", g.format, "json|csv (overrides output.format)");
    app.add_option("--threads", g.threads, "worker threads for sweep rows");

    auto* c_dim = app.add_subcommand("dim", "dimension report for one rate v");
    auto* c_sweep = app.add_subcommand("sweep", "dimension report across a v grid (CSV)");
    auto* c_rates = app.add_subcommand("rates", "hitting-rate estimates of a sequence");
    auto* c_checkg = app.add_subcommand("check-g", "target class membership up to n_max");
    auto* c_witness = app.add_subcommand("witness", "explicit witness construction");
    auto* c_count = app.add_subcommand("count", "feasible word counts");
    auto* c_gap = app.add_subcommand("gapcheck", "linear gap bound check");
    auto* c_pressure = app.add_subcommand("pressure", "pressure value or bracket");

    double opt_v = -1.0, opt_theta = -1.0, opt_s = -1.0;
    std::int64_t opt_n = -1, opt_depth = -1;
    std::string opt_sem;
    for (auto* sub : {c_dim, c_sweep, c_rates, c_checkg, c_witness, c_count, c_gap, c_pressure}) {
        sub->fallthrough();
        sub->add_option("--v", opt_v, "override params.v");
        sub->add_option("--theta", opt_theta, "override params.theta");
        sub->add_option("--s", opt_s, "override params.s");
        sub->add_option("--n", opt_n, "override params.n");
        sub->add_option("--depth", opt_depth, "override params.depth");
        sub->add_option("--semantics", opt_sem, "override params.semantics");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        json cfg = load_config(g.config_path);
        if (!cfg.contains("params")) cfg["params"] = json::object();
        if (opt_v >= 0.0) cfg["params"]["v"] = opt_v;
        if (opt_theta >= 0.0) cfg["params"]["theta"] = opt_theta;
        if (opt_s >= 0.0) cfg["params"]["s"] = opt_s;
        if (opt_n >= 0) cfg["params"]["n"] = opt_n;
        if (opt_depth >= 0) cfg["params"]["depth"] = opt_depth;
        if (!opt_sem.empty()) cfg["params"]["semantics"] = opt_sem;

        std::string format = g.format;
        if (format.empty() && cfg.contains("output"))
            format = cfg.at("output").value("format", "");
        if (g.out_path.empty() && cfg.contains("output"))
            g.out_path = cfg.at("output").value("path", "");

        std::string text;
        if (c_dim->parsed()) text = run_dim(cfg);
        else if (c_sweep->parsed()) text = run_sweep(cfg, g.threads);
        else if (c_rates->parsed()) text = run_rates(cfg);
        else if (c_checkg->parsed()) text = run_check_g(cfg);
        else if (c_witness->parsed()) text = run_witness(cfg);
        else if (c_count->parsed()) text = run_count(cfg, format.empty() ? "csv" : format);
        else if (c_gap->parsed()) text = run_gapcheck(cfg);
        else if (c_pressure->parsed()) text = run_pressure(cfg);

        emit(g, text);
        return 0;
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
