#pragma once

// Command-line driver. Exit codes: 0 all checks hold, 1 completed with a
// violation, 2 input or usage error.

#include <cstdlib>
#include <iostream>
#include <ostream>

#include <CLI11.hpp>

#include "timelot/io.hpp"

namespace timelot::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_violation = 1;
inline constexpr int exit_usage = 2;

struct Options {
    std::string model_path;
    std::string lottery_path;
    std::string out_path;
    std::string format = "json";
    std::string config_path;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    std::optional<double> eq_tol, strict_margin, fd_step_frac, bisect_tol;
    std::optional<std::size_t> grid_n, sample_n;

    // indiff / demo-incompat
    double x = 0.0, t = 0.0, tau = 0.0;
    std::size_t ntau = 20;
    // scan-example
    std::vector<double> a_range{0.5, 3.0}, b_range{0.05, 0.95};
    std::vector<double> x_range{0.1, 10.0}, t_range{0.1, 5.0};
    double d = 0.9, c = 1.0;
    std::size_t cells = 50;
    // glbu-demo
    std::vector<double> pi_grid;
    // invariance
    double a = 2.0, b1 = 0.1, b2 = -0.3;
    std::size_t pairs = 1000;
    bool control = false;
};

namespace detail {

/// Defaults, then scale-aware tolerances for the model, then the config file,
/// then explicit flags. The seed falls back to TIMELOT_SEED.
inline Tolerances resolve_settings(const Options& o, const Model* m, unsigned& threads,
                                   bool& grid_explicit) {
    Tolerances tol;
    if (m) tol = scaled_tolerances(*m, tol);
    if (const char* env = std::getenv("TIMELOT_SEED"); env && *env) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (*end != '\0' || env[0] == '-') throw Error(Errc::parse, "TIMELOT_SEED must be an unsigned integer");
        tol.seed = v;
    }
    if (!o.config_path.empty()) {
        Json cfg = read_json_file(o.config_path);
        io_detail::require_object(cfg, "config");
        if (cfg.contains("threads")) {
            if (!cfg["threads"].is_number_unsigned()) throw Error(Errc::parse, "config: threads must be an unsigned integer");
            threads = cfg["threads"].get<unsigned>();
            cfg.erase("threads");
        }
        grid_explicit = cfg.contains("grid_n");
        tol = tolerances_from_json(cfg, tol);
    }
    if (o.eq_tol) tol.eq_tol = *o.eq_tol;
    if (o.strict_margin) tol.strict_margin = *o.strict_margin;
    if (o.fd_step_frac) tol.fd_step_frac = *o.fd_step_frac;
    if (o.bisect_tol) tol.bisect_tol = *o.bisect_tol;
    if (o.grid_n) {
        tol.grid_n = *o.grid_n;
        grid_explicit = true;
    }
    if (o.sample_n) tol.sample_n = *o.sample_n;
    if (o.seed) tol.seed = *o.seed;
    if (o.threads) threads = o.threads;
    tol.validate();
    return tol;
}

inline Model require_model(const Options& o) {
    if (o.model_path.empty()) throw Error(Errc::invalid_argument, "--model is required");
    return parse_model_file(o.model_path);
}

inline Lottery require_lottery(const Options& o, const Domain& dom) {
    if (o.lottery_path.empty()) throw Error(Errc::invalid_argument, "--lottery is required");
    return parse_lottery_file(o.lottery_path, dom);
}

inline Interval pair_interval(const std::vector<double>& v, const char* flag) {
    if (v.size() != 2 || !(v[0] <= v[1]))
        throw Error(Errc::invalid_argument, std::string(flag) + " expects lo,hi with lo <= hi");
    return {v[0], v[1]};
}

struct Output {
    Json json;
    std::string csv;
    int code = exit_ok;
};

inline std::string key_value_csv(const Json& j) {
    std::ostringstream os;
    os << "key,value\n";
    for (const auto& [k, v] : j.items()) {
        if (v.is_number_float())
            os << k << ',' << csv_number(v.get<double>()) << '\n';
        else if (v.is_string())
            os << k << ',' << csv_quote(v.get<std::string>()) << '\n';
        else
            os << k << ',' << csv_quote(v.dump()) << '\n';
    }
    return os.str();
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Audit and evaluate intertemporal choice models over time lotteries", "timelot"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--model", o.model_path, "model JSON file");
    app.add_option("--lottery", o.lottery_path, "lottery JSON file");
    app.add_option("--out", o.out_path, "write output here instead of stdout");
    app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--config", o.config_path, "JSON settings file");
    app.add_option("--seed", o.seed, "RNG seed (default: TIMELOT_SEED or 42)");
    app.add_option("--threads", o.threads, "worker threads, 0 = all cores");
    app.add_option("--eq-tol", o.eq_tol);
    app.add_option("--strict-margin", o.strict_margin);
    app.add_option("--fd-step-frac", o.fd_step_frac);
    app.add_option("--bisect-tol", o.bisect_tol);
    app.add_option("--grid-n", o.grid_n);
    app.add_option("--sample-n", o.sample_n);

    auto* eval = app.add_subcommand("eval", "value of a lottery");
    auto* aud = app.add_subcommand("audit", "full axiom audit");
    auto* indiff = app.add_subcommand("indiff", "prize y with (y, t - tau) ~ (x, t)");
    indiff->add_option("--x", o.x)->required();
    indiff->add_option("--t", o.t)->required();
    indiff->add_option("--tau", o.tau)->required();
    auto* ce = app.add_subcommand("ce", "time certainty equivalent of a time lottery");
    auto* demo = app.add_subcommand("demo-incompat", "local weak-RSTL chain at (x, t)");
    demo->add_option("--x", o.x)->required();
    demo->add_option("--t", o.t)->required();
    demo->add_option("--ntau", o.ntau);
    auto* scan = app.add_subcommand("scan-example", "strict SI / strict RATL over an (a, b) grid");
    scan->add_option("--a-range", o.a_range)->delimiter(',')->expected(2);
    scan->add_option("--b-range", o.b_range)->delimiter(',')->expected(2);
    scan->add_option("--x-range", o.x_range)->delimiter(',')->expected(2);
    scan->add_option("--t-range", o.t_range)->delimiter(',')->expected(2);
    scan->add_option("--d", o.d);
    scan->add_option("--c", o.c, "bounded_ratio value scale");
    scan->add_option("--cells", o.cells);
    auto* glbu = app.add_subcommand("glbu-demo", "SI / weak-RATL trade-off across pi");
    glbu->add_option("--pi-grid", o.pi_grid)->delimiter(',');
    auto* inv = app.add_subcommand("invariance", "ranking invariance under a representation transform");
    inv->add_option("--a", o.a);
    inv->add_option("--b1", o.b1);
    inv->add_option("--b2", o.b2);
    inv->add_option("--pairs", o.pairs);
    inv->add_flag("--control", o.control, "leave phi unadjusted (negative control)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    detail::Output res;
    Json header;
    try {
        std::optional<Model> model;
        if (scan->parsed()) {
            if (!o.model_path.empty())
                throw Error(Errc::invalid_argument, "scan-example builds its own models; drop --model");
        } else if (!glbu->parsed() || !o.model_path.empty()) {
            model = detail::require_model(o);
        }
        unsigned threads = 0;
        bool grid_explicit = false;
        const Tolerances tol =
            // glbu-demo and invariance rescale per model themselves.
            detail::resolve_settings(o, model && !glbu->parsed() && !inv->parsed() ? &*model : nullptr,
                                     threads, grid_explicit);
        Json settings = to_json(tol);
        settings["threads"] = threads;

        const std::string cmd = app.get_subcommands().front()->get_name();
        header = Json{{"command", cmd}};
        if (model) header["model"] = to_json(*model);
        header["settings"] = settings;

        if (eval->parsed()) {
            const Lottery p = detail::require_lottery(o, domain_of(*model));
            res.json = Json{{"lottery", to_json(p)}, {"value", eval_lottery(*model, p)}};
            res.csv = detail::key_value_csv(Json{{"value", eval_lottery(*model, p)}});
        } else if (aud->parsed()) {
            const AuditReport rep = audit(*model, tol);
            res.json = to_json(rep);
            res.csv = to_csv(rep);
            res.code = rep.any_target_violated() ? exit_violation : exit_ok;
        } else if (indiff->parsed()) {
            const auto y = find_indifferent_prize(*model, o.x, o.t, o.tau, solve_settings(tol));
            Json r{{"x", o.x}, {"t", o.t}, {"tau", o.tau}};
            if (y) {
                r["y"] = *y;
                r["residual"] = eval_outcome(*model, {*y, o.t - o.tau}) - eval_outcome(*model, {o.x, o.t});
            } else {
                r["y"] = nullptr;
                r["reason"] = "even the lowest prize at t - tau is preferred";
            }
            res.json = r;
            res.csv = detail::key_value_csv(r);
        } else if (ce->parsed()) {
            const Lottery p = detail::require_lottery(o, domain_of(*model));
            const auto c = time_certainty_equivalent(*model, p, solve_settings(tol));
            Json r{{"t_star", c.t_star},
                   {"t_bar", c.t_bar},
                   {"value", c.value},
                   {"risk_premium", c.risk_premium()},
                   {"attitude", attitude_name(c.attitude)}};
            res.json = r;
            res.csv = detail::key_value_csv(r);
        } else if (demo->parsed()) {
            try {
                const IncompatibilityTrace tr = demo_local_rstl(*model, o.x, o.t, o.ntau, tol);
                res.json = to_json(tr);
                res.csv = to_csv(tr);
                res.code = tr.all_final_hold() && tr.all_chains_consistent() ? exit_ok : exit_violation;
            } catch (const Error& e) {
                if (e.code() != Errc::hypothesis_failed) throw;
                // A failed hypothesis is a verdict about the model, not bad input.
                const HypothesisAudit h = audit_hypotheses(*model, tol);
                res.json = Json{{"hypothesis_failed", e.what()},
                                {"hypotheses",
                                 {{"wci", to_json(h.wci)},
                                  {"stochastic_impatience", to_json(h.si)},
                                  {"no_future_bias", to_json(h.no_future_bias)}}}};
                res.csv = detail::key_value_csv(Json{{"hypothesis_failed", e.what()}});
                res.code = exit_violation;
            }
        } else if (scan->parsed()) {
            // Per-cell audits default to a 21-point grid unless grid_n was given.
            Tolerances cell_tol = tol;
            if (!grid_explicit) cell_tol.grid_n = 21;
            const Domain dom(detail::pair_interval(o.x_range, "--x-range"),
                             detail::pair_interval(o.t_range, "--t-range"));
            const RegionMap map = scan_example_region(detail::pair_interval(o.a_range, "--a-range"),
                                                      detail::pair_interval(o.b_range, "--b-range"), o.d,
                                                      BoundedRatioValue{o.c}, dom, o.cells, cell_tol,
                                                      threads);
            res.json = to_json(map);
            res.csv = to_csv(map);
            res.code = map.guarantee_failures() > 0 ? exit_violation : exit_ok;
        } else if (glbu->parsed()) {
            const std::vector<double> grid = o.pi_grid.empty() ? default_pi_grid() : o.pi_grid;
            SeparableUtility base{ExponentialDiscount{0.9}, IdentityValue{}};
            Domain dom({1.0, 100.0}, {0.0, 11.0});
            if (model) {
                std::visit(overloaded{
                               [&](const MultiplicativeEU& e) {
                                   if (!std::holds_alternative<IdentityCurvature>(e.phi()) ||
                                       !e.transform().is_identity())
                                       throw Error(Errc::invalid_argument,
                                                   "glbu-demo needs a separable base (phi = identity)");
                                   base = {e.discount_spec(), e.value_spec()};
                               },
                               [&](const Glbu& g) { base = g.base(); },
                               [&](const Disappointment& d) { base = d.base(); },
                           },
                           *model);
                dom = domain_of(*model);
            }
            const auto rows = glbu_tradeoff_demo(grid, base, dom, tol, threads);
            res.json = Json{{"base", {{"discount", to_json(base.discount)}, {"value", to_json(base.value)}}},
                            {"domain", to_json(dom)},
                            {"rows", to_json(rows)}};
            res.csv = to_csv(rows);
            const bool conflict = std::any_of(rows.begin(), rows.end(), [](const TradeoffRow& r) { return r.conflict(); });
            res.code = conflict ? exit_violation : exit_ok;
        } else if (inv->parsed()) {
            const auto* eu = std::get_if<MultiplicativeEU>(&*model);
            if (!eu) throw Error(Errc::invalid_argument, "invariance needs a multiplicative_eu model");
            const InvarianceResult r = o.control ? invariance_control(*eu, o.a, o.b1, o.b2, o.pairs, tol)
                                                 : invariance_suite(*eu, o.a, o.b1, o.b2, o.pairs, tol);
            res.json = to_json(r);
            res.json["control"] = o.control;
            res.csv = detail::key_value_csv(res.json);
            res.code = r.agree() ? exit_ok : exit_violation;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    std::string text;
    if (o.format == "csv") {
        text = res.csv;
    } else {
        Json doc = header;
        doc["result"] = res.json;
        doc["exit_code"] = res.code;
        text = doc.dump(2) + "\n";
    }
    if (o.out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(o.out_path);
        if (!f) {
            err << "error: cannot write " << o.out_path << '\n';
            return exit_usage;
        }
        f << text;
    }
    return res.code;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"timelot"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace timelot::cli
