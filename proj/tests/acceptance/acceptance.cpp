// End-to-end acceptance: one PASS/FAIL line per criterion, nonzero exit on
// any FAIL. Oracle values are computed in closed form here, not taken from
// the library.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "../support.hpp"

using namespace timelot;
using namespace timelot::testing;

namespace {

struct Criterion {
    std::string id;
    std::string title;
    std::function<bool(std::string&)> run;  // fills a short detail string
};

std::string fmt(const char* f, double a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

bool edu_everywhere_rstl(std::string& detail) {
    const Model m = edu();
    const AuditReport rep = audit(m);
    const bool si = rep.verdict(Axiom::stochastic_impatience).strict();
    const std::size_t weak_ratl = rep.at(Axiom::weak_ratl).counts.strict;
    const bool rstl = rep.verdict(Axiom::rstl).strict();

    // T is widened to [0, 11] so the lottery's late atom is inside the domain.
    const Model wide = edu(0.9, Domain({1.0, 100.0}, {0.0, 11.0}));
    const Lottery p = half_half({100.0, 1.0}, {100.0, 11.0});
    const auto ce = time_certainty_equivalent(wide, p, solve_settings(scaled_tolerances(wide)));
    const double oracle = std::log(0.5 * (std::pow(0.9, 1.0) + std::pow(0.9, 11.0))) / std::log(0.9);
    const bool ce_ok = std::abs(ce.t_star - 4.740) <= 1e-3 && std::abs(ce.t_star - oracle) <= 1e-6;
    detail = std::string("SI=") + verdict_kind_name(rep.verdict(Axiom::stochastic_impatience).kind) +
             " weak_ratl_instances=" + std::to_string(weak_ratl) +
             " RSTL=" + verdict_kind_name(rep.verdict(Axiom::rstl).kind) + fmt(" t*=%.10f", ce.t_star) +
             fmt(" oracle=%.10f", oracle);
    return si && weak_ratl == 0 && rstl && ce_ok;
}

bool power_exp_strict(std::string& detail) {
    const MultiplicativeEU eu = power_exp();
    const AuditReport rep = audit(Model(eu));
    const bool si = rep.verdict(Axiom::stochastic_impatience).strict();
    const bool ratl = rep.verdict(Axiom::ratl).strict();
    const DerivativeAgreement d = compare_derivatives(eu, scaled_tolerances(Model(eu)));
    detail = std::string("SI=") + verdict_kind_name(rep.verdict(Axiom::stochastic_impatience).kind) +
             " RATL=" + verdict_kind_name(rep.verdict(Axiom::ratl).kind) + " points=" +
             std::to_string(d.points) + fmt(" rel_err_xt=%.2e", d.max_rel_err_xt) +
             fmt(" rel_err_tt=%.2e", d.max_rel_err_tt);
    return si && ratl && d.points > 0 && d.u_xt_negative && d.u_tt_negative && d.max_rel_err_xt <= 1e-4 &&
           d.max_rel_err_tt <= 1e-4;
}

bool exp_cubic_counterexample(std::string& detail) {
    const MultiplicativeEU eu = exp_cubic();
    const Model m = eu;
    const AuditReport rep = audit(m);
    const Verdict& fb = rep.verdict(Axiom::future_bias);
    const Verdict& ratl = rep.verdict(Axiom::ratl);

    // ln D(t) = -t - t^3/3, so the central second difference is -2 t h^2.
    const Tolerances tol = rep.settings;
    const auto ts = linspace(eu.domain().t(), tol.grid_n);
    const double h = ts[1] - ts[0];
    double worst = 0.0;
    for (std::size_t j = 1; j + 1 < ts.size(); ++j) {
        const double d2 = eu.log_discount_at(ts[j - 1]) + eu.log_discount_at(ts[j + 1]) -
                          2.0 * eu.log_discount_at(ts[j]);
        worst = std::max(worst, std::abs(d2 - (-2.0 * ts[j] * h * h)));
    }

    bool witness_ok = false;
    double t_w = -1.0;
    if (ratl.witness && ratl.witness->left.size() == 1) {
        const Atom& a = ratl.witness->left.front();
        t_w = a.outcome.t;
        witness_ok = t_w <= 0.1 * eu.domain().t().length() && eu.derivatives(a.outcome.x, t_w).u_tt > 0.0;
        const auto [l, r] = reevaluate(m, *ratl.witness);
        witness_ok = witness_ok && l == ratl.witness->lhs && r == ratl.witness->rhs;
    }
    detail = std::string("FutureBias=") + verdict_kind_name(fb.kind) + " RATL=" + verdict_kind_name(ratl.kind) +
             fmt(" witness_t=%.4f", t_w) + fmt(" max|d2+2th^2|=%.1e", worst);
    return fb.strict() && ratl.violated() && witness_ok && worst <= 1e-12;
}

bool local_rstl_demo(std::string& detail) {
    std::size_t rows = 0;
    bool ok = true;
    for (const MultiplicativeEU& eu : {edu(), hyperbolic(1.0)}) {
        const Model m = eu;
        const Tolerances tol = scaled_tolerances(m);
        if (!audit_hypotheses(m, tol).all_hold()) return detail = "hypothesis audit failed", false;
        for (int k = 0; k < 10; ++k) {
            const double x = 10.0 + 9.0 * k;
            const double t = 0.5 + 0.9 * k;
            const IncompatibilityTrace tr = demo_local_rstl(m, x, t, 20, tol);
            rows += tr.rows.size();
            ok = ok && tr.rows.size() == 20 && tr.all_final_hold() && tr.all_chains_consistent();
        }
    }
    detail = "rows=" + std::to_string(rows);
    return ok && rows == 400;
}

bool glbu_tradeoff(std::string& detail) {
    const Domain dom({1.0, 100.0}, {0.0, 11.0});
    const SeparableUtility base{ExponentialDiscount{0.9}, IdentityValue{}};
    const auto rows = glbu_tradeoff_demo(default_pi_grid(), base, dom, Tolerances{});
    std::size_t conflicts = 0;
    const TradeoffRow* at03 = nullptr;
    for (const TradeoffRow& r : rows) {
        conflicts += r.conflict();
        if (std::abs(r.pi - 0.3) < 1e-12) at03 = &r;
    }
    if (!at03) return detail = "pi=0.3 missing", false;

    const Model m = Glbu(base, 0.3, dom);
    const double spread = eval_lottery(m, half_half({100.0, 1.0}, {100.0, 11.0}));
    const double point = eval_outcome(m, {100.0, 6.0});
    const double spread_oracle = 0.3 * 90.0 + 0.7 * 100.0 * std::pow(0.9, 11.0);
    const double point_oracle = 100.0 * std::pow(0.9, 6.0);
    const double gap = point - spread;
    bool witness_ok = at03->si.violated() && at03->si.witness.has_value();
    if (witness_ok) {
        const auto [l, r] = reevaluate(m, *at03->si.witness);
        witness_ok = l == at03->si.witness->lhs && r == at03->si.witness->rhs && l < r;
    }
    detail = "conflicts=" + std::to_string(conflicts) + fmt(" V(spread)=%.10f", spread) +
             fmt(" V(point)=%.10f", point) + fmt(" gap=%.12f", gap) +
             " weak_ratl_instances(0.3)=" + std::to_string(at03->weak_ratl_instances);
    return rows.size() == 19 && conflicts == 0 && std::abs(spread - spread_oracle) <= 1e-6 &&
           std::abs(point - point_oracle) <= 1e-6 && std::abs(gap - 4.177358273700008) <= 1e-6 &&
           at03->weak_ratl_instances > 0 && witness_ok;
}

bool uniqueness(std::string& detail) {
    const MultiplicativeEU eu = edu();
    const InvarianceResult good = invariance_suite(eu, 2.0, 0.1, -0.3, 1000);
    const InvarianceResult bad = invariance_control(eu, 2.0, 0.1, -0.3, 1000);
    bool witness_ok = false;
    if (bad.witness) {
        const MultiplicativeEU broken = apply_unadjusted_transform(eu, 2.0, 0.1, -0.3);
        const auto& w = *bad.witness;
        const double d1 = eval_lottery(Model(eu), w.p) - eval_lottery(Model(eu), w.q);
        const double d2 = eval_lottery(Model(broken), w.p) - eval_lottery(Model(broken), w.q);
        witness_ok = d1 == w.diff_first && d2 == w.diff_second && (d1 > 0) != (d2 > 0);
    }
    detail = "pairs=" + std::to_string(good.pairs) + " disagreements=" + std::to_string(good.disagreements) +
             " control_disagreements=" + std::to_string(bad.disagreements);
    return good.pairs == 1000 && good.agree() && !bad.agree() && witness_ok;
}

bool oracle_agreement(std::string& detail) {
    std::size_t models = 0, si_mismatch = 0, ratl_mismatch = 0;
    for (const MultiplicativeEU& eu : catalog()) {
        const Model m = eu;
        const Tolerances tol = scaled_tolerances(m);
        ++models;
        const auto four = check_stochastic_impatience(m, SiMode::fourpoint, tol).verdict.kind;
        const auto deriv = check_stochastic_impatience(m, SiMode::mixed_partial, tol).verdict.kind;
        si_mismatch += four != deriv;
        const AttitudeResult conc = check_ratl(m, RatlMode::concavity, tol);
        const AttitudeResult mid = check_ratl(m, RatlMode::midpoint, tol);
        ratl_mismatch += conc.averse.verdict.kind != mid.averse.verdict.kind ||
                         conc.seeking.verdict.kind != mid.seeking.verdict.kind;
    }
    detail = "models=" + std::to_string(models) + " si_mismatch=" + std::to_string(si_mismatch) +
             " ratl_mismatch=" + std::to_string(ratl_mismatch);
    return models > 0 && si_mismatch == 0 && ratl_mismatch == 0;
}

bool solver_certificates(std::string& detail) {
    const auto models = catalog();
    Rng rng = Rng::stream(42, "acceptance_solver");
    std::size_t calls = 0, failures = 0;
    double worst_resid_ratio = 0.0;
    for (std::size_t k = 0; k < 500; ++k) {
        const MultiplicativeEU& eu = models[k % models.size()];
        const Model m = eu;
        const Tolerances tol = scaled_tolerances(m);
        const SolveSettings ss = solve_settings(tol);
        const Domain& dom = eu.domain();
        const double x = rng.uniform(dom.x().lo + 0.25 * dom.x().length(), dom.x().hi);
        const double t = rng.uniform(dom.t().lo + 0.25 * dom.t().length(), dom.t().hi);
        const LocalRadius lr = local_radius(m, x, t, ss);
        const double tau = rng.uniform_open(0.0, 1.0) * std::min(lr.s, t - dom.t().lo);
        const auto y = find_indifferent_prize(m, x, t, tau, ss);
        ++calls;
        if (!y) {
            ++failures;
            continue;
        }
        const double resid = std::abs(eval_outcome(m, {*y, t - tau}) - eval_outcome(m, {x, t}));
        worst_resid_ratio = std::max(worst_resid_ratio, resid / tol.eq_tol);
        failures += !(resid <= tol.eq_tol && *y < x);
    }
    // Closed form for exponential discounting with identity value: y = beta^tau x.
    const Model e = edu();
    const SolveSettings ss = solve_settings(scaled_tolerances(e));
    double worst_closed = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double x = rng.uniform(20.0, 100.0);
        const double t = rng.uniform(2.0, 10.0);
        const double tau = rng.uniform_open(0.0, 2.0);
        const auto y = find_indifferent_prize(e, x, t, tau, ss);
        if (!y) return detail = "closed-form call had no solution", false;
        worst_closed = std::max(worst_closed, std::abs(*y - std::pow(0.9, tau) * x));
    }
    detail = "calls=" + std::to_string(calls) + " failures=" + std::to_string(failures) +
             fmt(" max resid/eq_tol=%.3f", worst_resid_ratio) + fmt(" max|y-beta^tau x|=%.2e", worst_closed);
    return calls == 500 && failures == 0 && worst_closed <= 1e-8;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"A1", "EDU: strict SI, no weak-RATL instance, strict RSTL, time CE 4.740", edu_everywhere_rstl},
        {"A2", "neg-neglog-pow / power-exponent model: strict SI and RATL, derivatives", power_exp_strict},
        {"A3", "exp-cubic discount: Future Bias strict, RATL violated near t=0", exp_cubic_counterexample},
        {"A4", "local weak-RSTL chain for EDU and hyperbolic, 10 points x 20 tau", local_rstl_demo},
        {"A5", "GLBU trade-off over pi grid, pi=0.3 gap and SI witness", glbu_tradeoff},
        {"A6", "ranking invariance under representation transform and control", uniqueness},
        {"A7", "catalog: fourpoint vs mixed-partial SI, concavity vs midpoint RATL", oracle_agreement},
        {"A8", "solver certificates: 500 indifference solves, closed form", solver_certificates},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("%s %s: %s [%s]\n", ok ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(), detail.c_str());
        failed += !ok;
    }
    return failed == 0 ? 0 : 1;
}
