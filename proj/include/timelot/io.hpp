#pragma once

// JSON and CSV for models, lotteries, settings, audit reports and experiment
// outputs. Readers are strict: unknown or missing keys are ParseErrors.
// Numbers are written in shortest round-trip form.

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "timelot/experiments.hpp"

namespace timelot {

using Json = nlohmann::ordered_json;

namespace io_detail {

[[noreturn]] inline void parse_fail(const std::string& what) { throw Error(Errc::parse, what); }

inline void require_object(const Json& j, const std::string& ctx) {
    if (!j.is_object()) parse_fail(ctx + ": expected an object");
}

/// Rejects keys outside `allowed`.
inline void only_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                      const std::string& ctx) {
    require_object(j, ctx);
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) parse_fail(ctx + ": unknown key \"" + key + "\"");
    }
}

inline const Json& field(const Json& j, const std::string& key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end()) parse_fail(ctx + ": missing key \"" + key + "\"");
    return *it;
}

inline double number(const Json& j, const std::string& key, const std::string& ctx) {
    const Json& v = field(j, key, ctx);
    if (!v.is_number()) parse_fail(ctx + ": \"" + key + "\" must be a number");
    return v.get<double>();
}

inline std::string text(const Json& j, const std::string& key, const std::string& ctx) {
    const Json& v = field(j, key, ctx);
    if (!v.is_string()) parse_fail(ctx + ": \"" + key + "\" must be a string");
    return v.get<std::string>();
}

inline std::uint64_t unsigned_number(const Json& j, const std::string& key, const std::string& ctx) {
    const Json& v = field(j, key, ctx);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) parse_fail(ctx + ": \"" + key + "\" must be a non-negative integer");
    return v.get<std::uint64_t>();
}

inline Interval interval(const Json& j, const std::string& key, const std::string& ctx) {
    const Json& v = field(j, key, ctx);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        parse_fail(ctx + ": \"" + key + "\" must be [lo, hi]");
    return {v[0].get<double>(), v[1].get<double>()};
}

inline Json json_number_or_null(const std::optional<double>& v) {
    return v ? Json(*v) : Json(nullptr);
}

inline std::optional<double> optional_number(const Json& j, const std::string& key,
                                             const std::string& ctx) {
    const Json& v = field(j, key, ctx);
    if (v.is_null()) return std::nullopt;
    if (!v.is_number()) parse_fail(ctx + ": \"" + key + "\" must be a number or null");
    return v.get<double>();
}

}  // namespace io_detail

// ---------------------------------------------------------------------------
// Model specs

inline Json to_json(const Domain& d) {
    return Json{{"x", {d.x().lo, d.x().hi}}, {"t", {d.t().lo, d.t().hi}}};
}

inline Domain domain_from_json(const Json& j) {
    using namespace io_detail;
    only_keys(j, {"x", "t"}, "domain");
    return Domain(interval(j, "x", "domain"), interval(j, "t", "domain"));
}

inline Json to_json(const CurvatureSpec& phi) {
    return std::visit(overloaded{
                          [](const IdentityCurvature&) { return Json{{"kind", "identity"}}; },
                          [](const PowerCurvature& p) { return Json{{"kind", "power"}, {"gamma", p.gamma}}; },
                          [](const NegNegLogPowCurvature& p) {
                              return Json{{"kind", "neg_neglog_pow"}, {"b", p.b}};
                          },
                      },
                      phi);
}

inline CurvatureSpec curvature_from_json(const Json& j) {
    using namespace io_detail;
    require_object(j, "phi");
    const std::string kind = text(j, "kind", "phi");
    if (kind == "identity") {
        only_keys(j, {"kind"}, "phi");
        return IdentityCurvature{};
    }
    if (kind == "power") {
        only_keys(j, {"kind", "gamma"}, "phi");
        return PowerCurvature{number(j, "gamma", "phi")};
    }
    if (kind == "neg_neglog_pow") {
        only_keys(j, {"kind", "b"}, "phi");
        return NegNegLogPowCurvature{number(j, "b", "phi")};
    }
    parse_fail("phi: unknown kind \"" + kind + "\"");
}

inline Json to_json(const DiscountSpec& D) {
    return std::visit(
        overloaded{
            [](const ExponentialDiscount& d) { return Json{{"kind", "exponential"}, {"beta", d.beta}}; },
            [](const HyperbolicDiscount& d) { return Json{{"kind", "hyperbolic"}, {"k", d.k}}; },
            [](const QuasiHyperbolicDiscount& d) {
                return Json{{"kind", "generalized_quasi_hyperbolic"}, {"alpha", d.alpha}, {"beta", d.beta}};
            },
            [](const PowerExponentDiscount& d) {
                return Json{{"kind", "power_exponent"}, {"d", d.d}, {"a", d.a}};
            },
            [](const ExpCubicDiscount&) { return Json{{"kind", "exp_cubic"}}; },
        },
        D);
}

inline DiscountSpec discount_from_json(const Json& j) {
    using namespace io_detail;
    require_object(j, "discount");
    const std::string kind = text(j, "kind", "discount");
    const std::string ctx = "discount";
    if (kind == "exponential") {
        only_keys(j, {"kind", "beta"}, ctx);
        return ExponentialDiscount{number(j, "beta", ctx)};
    }
    if (kind == "hyperbolic") {
        only_keys(j, {"kind", "k"}, ctx);
        return HyperbolicDiscount{number(j, "k", ctx)};
    }
    if (kind == "generalized_quasi_hyperbolic") {
        only_keys(j, {"kind", "alpha", "beta"}, ctx);
        return QuasiHyperbolicDiscount{number(j, "alpha", ctx), number(j, "beta", ctx)};
    }
    if (kind == "power_exponent") {
        only_keys(j, {"kind", "d", "a"}, ctx);
        return PowerExponentDiscount{number(j, "d", ctx), number(j, "a", ctx)};
    }
    if (kind == "exp_cubic") {
        only_keys(j, {"kind"}, ctx);
        return ExpCubicDiscount{};
    }
    parse_fail("discount: unknown kind \"" + kind + "\"");
}

inline Json to_json(const ValueSpec& v) {
    return std::visit(overloaded{
                          [](const IdentityValue&) { return Json{{"kind", "identity"}}; },
                          [](const PowerValue& p) { return Json{{"kind", "power"}, {"gamma", p.gamma}}; },
                          [](const BoundedRatioValue& b) { return Json{{"kind", "bounded_ratio"}, {"c", b.c}}; },
                      },
                      v);
}

inline ValueSpec value_from_json(const Json& j) {
    using namespace io_detail;
    require_object(j, "value");
    const std::string kind = text(j, "kind", "value");
    if (kind == "identity") {
        only_keys(j, {"kind"}, "value");
        return IdentityValue{};
    }
    if (kind == "power") {
        only_keys(j, {"kind", "gamma"}, "value");
        return PowerValue{number(j, "gamma", "value")};
    }
    if (kind == "bounded_ratio") {
        only_keys(j, {"kind", "c"}, "value");
        return BoundedRatioValue{number(j, "c", "value")};
    }
    parse_fail("value: unknown kind \"" + kind + "\"");
}

inline Json to_json(const LogAffine& t) {
    return Json{{"scale", t.scale},
                {"discount_shift", t.discount_shift},
                {"value_shift", t.value_shift},
                {"adjust_curvature", t.adjust_curvature}};
}

inline LogAffine log_affine_from_json(const Json& j) {
    using namespace io_detail;
    only_keys(j, {"scale", "discount_shift", "value_shift", "adjust_curvature"}, "transform");
    const Json& adj = field(j, "adjust_curvature", "transform");
    if (!adj.is_boolean()) parse_fail("transform: \"adjust_curvature\" must be a boolean");
    return {number(j, "scale", "transform"), number(j, "discount_shift", "transform"),
            number(j, "value_shift", "transform"), adj.get<bool>()};
}

inline Json to_json(const Model& m) {
    return std::visit(
        overloaded{
            [](const MultiplicativeEU& e) {
                Json j{{"family", "multiplicative_eu"},
                       {"phi", to_json(e.phi())},
                       {"discount", to_json(e.discount_spec())},
                       {"value", to_json(e.value_spec())},
                       {"domain", to_json(e.domain())}};
                if (!e.transform().is_identity()) j["transform"] = to_json(e.transform());
                return j;
            },
            [](const Glbu& g) {
                return Json{{"family", "glbu"},
                            {"discount", to_json(g.base().discount)},
                            {"value", to_json(g.base().value)},
                            {"pi_half", g.pi_half()},
                            {"domain", to_json(g.domain())}};
            },
            [](const Disappointment& d) {
                Json ref = std::visit(overloaded{
                                          [](const MeanReference&) { return Json{{"kind", "mean"}}; },
                                          [](const ConstantReference& c) {
                                              return Json{{"kind", "constant"}, {"u_bar", c.u_bar}};
                                          },
                                      },
                                      d.reference());
                return Json{{"family", "disappointment"},
                            {"discount", to_json(d.base().discount)},
                            {"value", to_json(d.base().value)},
                            {"r", {{"kind", "exp_gain"}, {"lambda", d.gain().lambda}, {"kappa", d.gain().kappa}}},
                            {"reference", ref},
                            {"domain", to_json(d.domain())}};
            },
        },
        m);
}

/// Builds and validates a model; catalog violations surface as ValidationError.
inline Model model_from_json(const Json& j) {
    using namespace io_detail;
    require_object(j, "model");
    const std::string family = text(j, "family", "model");
    if (family == "multiplicative_eu") {
        only_keys(j, {"family", "phi", "discount", "value", "domain", "transform"}, "model");
        LogAffine t;
        if (j.contains("transform")) t = log_affine_from_json(j["transform"]);
        // A transformed representation of a valid model need not meet the
        // untransformed parameter constraints.
        const PowerExpGuard guard = t.is_identity() ? PowerExpGuard::enforce : PowerExpGuard::relaxed;
        return MultiplicativeEU(curvature_from_json(field(j, "phi", "model")),
                                discount_from_json(field(j, "discount", "model")),
                                value_from_json(field(j, "value", "model")),
                                domain_from_json(field(j, "domain", "model")), t, guard);
    }
    if (family == "glbu") {
        only_keys(j, {"family", "discount", "value", "pi_half", "domain"}, "model");
        return Glbu(SeparableUtility{discount_from_json(field(j, "discount", "model")),
                                     value_from_json(field(j, "value", "model"))},
                    number(j, "pi_half", "model"), domain_from_json(field(j, "domain", "model")));
    }
    if (family == "disappointment") {
        only_keys(j, {"family", "discount", "value", "r", "reference", "domain"}, "model");
        const Json& r = field(j, "r", "model");
        only_keys(r, {"kind", "lambda", "kappa"}, "r");
        if (text(r, "kind", "r") != "exp_gain") parse_fail("r: kind must be \"exp_gain\"");
        const ExpGain gain{number(r, "lambda", "r"), number(r, "kappa", "r")};
        const Json& ref = field(j, "reference", "model");
        require_object(ref, "reference");
        const std::string rk = text(ref, "kind", "reference");
        Reference reference;
        if (rk == "mean") {
            only_keys(ref, {"kind"}, "reference");
            reference = MeanReference{};
        } else if (rk == "constant") {
            only_keys(ref, {"kind", "u_bar"}, "reference");
            reference = ConstantReference{number(ref, "u_bar", "reference")};
        } else {
            parse_fail("reference: unknown kind \"" + rk + "\"");
        }
        return Disappointment(SeparableUtility{discount_from_json(field(j, "discount", "model")),
                                               value_from_json(field(j, "value", "model"))},
                              gain, reference, domain_from_json(field(j, "domain", "model")));
    }
    parse_fail("model: unknown family \"" + family + "\"");
}

// ---------------------------------------------------------------------------
// Lotteries

inline Json to_json(const Atom& a) { return Json{{"x", a.outcome.x}, {"t", a.outcome.t}, {"p", a.p}}; }

inline Json atoms_to_json(const std::vector<Atom>& atoms) {
    Json arr = Json::array();
    for (const Atom& a : atoms) arr.push_back(to_json(a));
    return arr;
}

inline std::vector<Atom> atoms_from_json(const Json& arr, const std::string& ctx) {
    using namespace io_detail;
    if (!arr.is_array()) parse_fail(ctx + ": atoms must be an array");
    std::vector<Atom> atoms;
    for (const Json& a : arr) {
        only_keys(a, {"x", "t", "p"}, ctx + " atom");
        atoms.push_back({{number(a, "x", ctx), number(a, "t", ctx)}, number(a, "p", ctx)});
    }
    return atoms;
}

inline Json to_json(const Lottery& p) { return Json{{"atoms", atoms_to_json(p.atoms())}}; }

inline Lottery lottery_from_json(const Json& j, std::optional<Domain> domain = std::nullopt) {
    using namespace io_detail;
    only_keys(j, {"atoms"}, "lottery");
    const auto atoms = atoms_from_json(field(j, "atoms", "lottery"), "lottery");
    return make_lottery(atoms, domain);
}

// ---------------------------------------------------------------------------
// Settings

inline Json to_json(const Tolerances& t) {
    return Json{{"eq_tol", t.eq_tol},           {"strict_margin", t.strict_margin},
                {"fd_step_frac", t.fd_step_frac}, {"bisect_tol", t.bisect_tol},
                {"grid_n", t.grid_n},           {"sample_n", t.sample_n},
                {"seed", t.seed}};
}

/// Every key is optional and overrides `base`; unknown keys are errors.
inline Tolerances tolerances_from_json(const Json& j, Tolerances base = {}) {
    using namespace io_detail;
    only_keys(j, {"eq_tol", "strict_margin", "fd_step_frac", "bisect_tol", "grid_n", "sample_n", "seed"},
              "settings");
    if (j.contains("eq_tol")) base.eq_tol = number(j, "eq_tol", "settings");
    if (j.contains("strict_margin")) base.strict_margin = number(j, "strict_margin", "settings");
    if (j.contains("fd_step_frac")) base.fd_step_frac = number(j, "fd_step_frac", "settings");
    if (j.contains("bisect_tol")) base.bisect_tol = number(j, "bisect_tol", "settings");
    if (j.contains("grid_n")) base.grid_n = unsigned_number(j, "grid_n", "settings");
    if (j.contains("sample_n")) base.sample_n = unsigned_number(j, "sample_n", "settings");
    if (j.contains("seed")) base.seed = unsigned_number(j, "seed", "settings");
    return base;
}

// ---------------------------------------------------------------------------
// Verdicts and audit reports

inline std::optional<VerdictKind> verdict_kind_from_name(std::string_view s) {
    for (auto k : {VerdictKind::holds_strictly, VerdictKind::holds_weakly, VerdictKind::violated,
                   VerdictKind::not_applicable})
        if (s == verdict_kind_name(k)) return k;
    return std::nullopt;
}

inline std::optional<WitnessKind> witness_kind_from_name(std::string_view s) {
    for (auto k : {WitnessKind::lotteries, WitnessKind::log_discount, WitnessKind::discount,
                   WitnessKind::value, WitnessKind::curvature_of_exp})
        if (s == witness_kind_name(k)) return k;
    return std::nullopt;
}

inline Json terms_to_json(const std::vector<Term>& terms) {
    Json arr = Json::array();
    for (const Term& t : terms) arr.push_back(Json{{"arg", t.arg}, {"weight", t.weight}});
    return arr;
}

inline std::vector<Term> terms_from_json(const Json& arr) {
    using namespace io_detail;
    if (!arr.is_array()) parse_fail("witness: terms must be an array");
    std::vector<Term> out;
    for (const Json& t : arr) {
        only_keys(t, {"arg", "weight"}, "witness term");
        out.push_back({number(t, "arg", "witness term"), number(t, "weight", "witness term")});
    }
    return out;
}

inline Json to_json(const Witness& w) {
    return Json{{"check", w.check},
                {"kind", witness_kind_name(w.kind)},
                {"points", {{"left", atoms_to_json(w.left)}, {"right", atoms_to_json(w.right)}}},
                {"terms", {{"left", terms_to_json(w.left_terms)}, {"right", terms_to_json(w.right_terms)}}},
                {"lhs", w.lhs},
                {"rhs", w.rhs}};
}

inline Witness witness_from_json(const Json& j) {
    using namespace io_detail;
    only_keys(j, {"check", "kind", "points", "terms", "lhs", "rhs"}, "witness");
    Witness w;
    w.check = text(j, "check", "witness");
    const auto kind = witness_kind_from_name(text(j, "kind", "witness"));
    if (!kind) parse_fail("witness: unknown kind");
    w.kind = *kind;
    const Json& pts = field(j, "points", "witness");
    only_keys(pts, {"left", "right"}, "witness points");
    w.left = atoms_from_json(field(pts, "left", "witness points"), "witness");
    w.right = atoms_from_json(field(pts, "right", "witness points"), "witness");
    const Json& terms = field(j, "terms", "witness");
    only_keys(terms, {"left", "right"}, "witness terms");
    w.left_terms = terms_from_json(field(terms, "left", "witness terms"));
    w.right_terms = terms_from_json(field(terms, "right", "witness terms"));
    w.lhs = number(j, "lhs", "witness");
    w.rhs = number(j, "rhs", "witness");
    return w;
}

inline Json to_json(const Verdict& v) {
    return Json{{"verdict", verdict_kind_name(v.kind)},
                {"margin", io_detail::json_number_or_null(v.min_margin)},
                {"witness", v.witness ? to_json(*v.witness) : Json(nullptr)},
                {"reason", v.reason}};
}

inline Json to_json(const InstanceCounts& c) {
    return Json{{"strict", c.strict}, {"weak", c.weak}, {"violated", c.violated}};
}

inline Json to_json(const AuditReport& r) {
    Json entries = Json::array();
    for (const AuditEntry& e : r.entries) {
        const Verdict& v = e.result.verdict;
        entries.push_back(Json{{"axiom", axiom_name(e.axiom)},
                               {"verdict", verdict_kind_name(v.kind)},
                               {"margin", io_detail::json_number_or_null(v.min_margin)},
                               {"counts", to_json(e.result.counts)},
                               {"witness", v.witness ? to_json(*v.witness) : Json(nullptr)},
                               {"reason", v.reason}});
    }
    return Json{{"model", r.model_id}, {"settings", to_json(r.settings)}, {"axioms", entries}};
}

inline AuditReport audit_report_from_json(const Json& j) {
    using namespace io_detail;
    only_keys(j, {"model", "settings", "axioms"}, "report");
    AuditReport r;
    r.model_id = text(j, "model", "report");
    r.settings = tolerances_from_json(field(j, "settings", "report"));
    const Json& arr = field(j, "axioms", "report");
    if (!arr.is_array()) parse_fail("report: axioms must be an array");
    for (const Json& e : arr) {
        only_keys(e, {"axiom", "verdict", "margin", "counts", "witness", "reason"}, "report entry");
        AuditEntry entry;
        const auto ax = axiom_from_name(text(e, "axiom", "report entry"));
        if (!ax) parse_fail("report entry: unknown axiom");
        entry.axiom = *ax;
        const auto kind = verdict_kind_from_name(text(e, "verdict", "report entry"));
        if (!kind) parse_fail("report entry: unknown verdict");
        Verdict& v = entry.result.verdict;
        v.kind = *kind;
        v.min_margin = optional_number(e, "margin", "report entry");
        const Json& w = field(e, "witness", "report entry");
        if (!w.is_null()) v.witness = witness_from_json(w);
        v.reason = text(e, "reason", "report entry");
        const Json& c = field(e, "counts", "report entry");
        only_keys(c, {"strict", "weak", "violated"}, "counts");
        entry.result.counts = {unsigned_number(c, "strict", "counts"), unsigned_number(c, "weak", "counts"),
                               unsigned_number(c, "violated", "counts")};
        r.entries.push_back(std::move(entry));
    }
    return r;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string csv_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_number(const std::optional<double>& v) { return v ? csv_number(*v) : ""; }

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string to_csv(const AuditReport& r) {
    std::ostringstream os;
    os << "axiom,verdict,margin,strict,weak,violated,witness_lhs,witness_rhs,reason\n";
    for (const AuditEntry& e : r.entries) {
        const Verdict& v = e.result.verdict;
        os << axiom_name(e.axiom) << ',' << verdict_kind_name(v.kind) << ',' << csv_number(v.min_margin)
           << ',' << e.result.counts.strict << ',' << e.result.counts.weak << ','
           << e.result.counts.violated << ','
           << (v.witness ? csv_number(v.witness->lhs) : "") << ','
           << (v.witness ? csv_number(v.witness->rhs) : "") << ',' << csv_quote(v.reason) << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Experiment outputs

inline Json to_json(const Comparison& c) {
    return Json{{"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}};
}

inline Json to_json(const IncompatibilityTrace& tr) {
    Json rows = Json::array();
    for (const TraceRow& r : tr.rows)
        rows.push_back(Json{{"tau", r.tau},
                            {"y", r.y},
                            {"premise", to_json(r.premise)},
                            {"step1", to_json(r.step1)},
                            {"step2", to_json(r.step2)},
                            {"step3", to_json(r.step3)},
                            {"final", to_json(r.final)},
                            {"chain_consistent", r.chain_consistent}});
    return Json{{"x", tr.x},
                {"t", tr.t},
                {"radius", tr.radius},
                {"lemma", {{"s", tr.lemma.s},
                           {"case", tr.lemma.proof_case},
                           {"match", io_detail::json_number_or_null(tr.lemma.match)}}},
                {"hypotheses",
                 {{"wci", to_json(tr.wci)}, {"stochastic_impatience", to_json(tr.si)},
                  {"no_future_bias", to_json(tr.no_future_bias)}}},
                {"eq_tol", tr.eq_tol},
                {"rows", rows}};
}

inline std::string to_csv(const IncompatibilityTrace& tr) {
    std::ostringstream os;
    os << "tau,y,spread_value,point_value,step1_lhs,step1_rhs,step2_lhs,step2_rhs,step3_lhs,step3_rhs,"
          "final_holds,chain_consistent\n";
    for (const TraceRow& r : tr.rows)
        os << csv_number(r.tau) << ',' << csv_number(r.y) << ',' << csv_number(r.final.lhs) << ','
           << csv_number(r.final.rhs) << ',' << csv_number(r.step1.lhs) << ',' << csv_number(r.step1.rhs)
           << ',' << csv_number(r.step2.lhs) << ',' << csv_number(r.step2.rhs) << ','
           << csv_number(r.step3.lhs) << ',' << csv_number(r.step3.rhs) << ',' << r.final.holds << ','
           << r.chain_consistent << '\n';
    return os.str();
}

inline Json to_json(const RegionMap& map) {
    Json cells = Json::array();
    for (const RegionCell& c : map.cell)
        cells.push_back(Json{{"a", c.a},
                             {"b", c.b},
                             {"valid", c.valid},
                             {"in_guarantee", c.in_guarantee},
                             {"strict_si", c.strict_si},
                             {"strict_ratl", c.strict_ratl},
                             {"reason", c.reason}});
    return Json{{"a_range", {map.a_range.lo, map.a_range.hi}},
                {"b_range", {map.b_range.lo, map.b_range.hi}},
                {"d", map.d},
                {"value", to_json(map.v)},
                {"domain", to_json(map.domain)},
                {"cells", map.cells},
                {"grid_n", map.grid_n},
                {"guarantee_failures", map.guarantee_failures()},
                {"cell", cells}};
}

inline std::string to_csv(const RegionMap& map) {
    std::ostringstream os;
    os << "a,b,valid,in_guarantee,strict_si,strict_ratl,reason\n";
    for (const RegionCell& c : map.cell)
        os << csv_number(c.a) << ',' << csv_number(c.b) << ',' << c.valid << ',' << c.in_guarantee << ','
           << c.strict_si << ',' << c.strict_ratl << ',' << csv_quote(c.reason) << '\n';
    return os.str();
}

inline Json to_json(const std::vector<TradeoffRow>& rows) {
    Json arr = Json::array();
    for (const TradeoffRow& r : rows)
        arr.push_back(Json{{"pi", r.pi},
                           {"stochastic_impatience", to_json(r.si)},
                           {"weak_ratl_instances", r.weak_ratl_instances},
                           {"weak_ratl", to_json(r.weak_ratl)},
                           {"no_future_bias", to_json(r.no_future_bias)},
                           {"conflict", r.conflict()}});
    return arr;
}

inline std::string to_csv(const std::vector<TradeoffRow>& rows) {
    std::ostringstream os;
    os << "pi,si_verdict,weak_ratl_instances,no_future_bias_verdict,conflict\n";
    for (const TradeoffRow& r : rows)
        os << csv_number(r.pi) << ',' << verdict_kind_name(r.si.kind) << ',' << r.weak_ratl_instances << ','
           << verdict_kind_name(r.no_future_bias.kind) << ',' << r.conflict() << '\n';
    return os.str();
}

inline Json to_json(const InvarianceResult& r) {
    Json j{{"agree", r.agree()}, {"pairs", r.pairs}, {"disagreements", r.disagreements}};
    if (r.witness)
        j["witness"] = Json{{"p", to_json(r.witness->p)},
                            {"q", to_json(r.witness->q)},
                            {"diff_original", r.witness->diff_first},
                            {"diff_transformed", r.witness->diff_second}};
    else
        j["witness"] = nullptr;
    return j;
}

// ---------------------------------------------------------------------------
// Files

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::parse, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse, path + ": " + e.what());
    }
}

inline Model parse_model_file(const std::string& path) {
    try {
        return model_from_json(read_json_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse, path + ": " + e.what());
    }
}

inline Lottery parse_lottery_file(const std::string& path, std::optional<Domain> domain = std::nullopt) {
    try {
        return lottery_from_json(read_json_file(path), domain);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse, path + ": " + e.what());
    }
}

}  // namespace timelot
