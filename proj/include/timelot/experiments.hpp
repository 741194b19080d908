#pragma once

// Demonstrations built on the auditor: the local weak-RSTL chain, the GLBU
// trade-off table, the parametric region scan for the neg-neglog-pow /
// power-exponent family, and invariance under representation transforms.

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "timelot/axioms.hpp"

namespace timelot {

namespace detail {

inline unsigned resolve_threads(unsigned threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Runs f(i) for i in [0, n). Results must be written to slot i by f so the
/// outcome does not depend on scheduling. The first exception is rethrown.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
    const unsigned k = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), n));
    if (k <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    pool.reserve(k);
    for (unsigned w = 0; w < k; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard lock(failure_mu);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Local weak RSTL

struct Comparison {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

struct TraceRow {
    double tau = 0.0;
    double y = 0.0;
    Comparison premise;  // V(x, t+tau) >= V(y, t): No Future Bias applied to the indifference
    Comparison step1;    // 1/2(x,t+tau) + 1/2(x,t-tau)  >=  1/2(y,t) + 1/2(x,t-tau)
    Comparison step2;    // 1/2(y,t) + 1/2(x,t-tau)      >=  1/2(x,t) + 1/2(y,t-tau)
    Comparison step3;    // 1/2(x,t) + 1/2(y,t-tau)      ~   (x,t)
    Comparison final;    // 1/2(x,t+tau) + 1/2(x,t-tau)  >=  (x,t)
    bool chain_consistent = false;
};

struct IncompatibilityTrace {
    double x = 0.0;
    double t = 0.0;
    double radius = 0.0;
    LocalRadius lemma;  // uncapped radius from the indifference lemma
    Verdict wci;
    Verdict si;
    Verdict no_future_bias;
    double eq_tol = 0.0;
    std::vector<TraceRow> rows;

    bool all_final_hold() const {
        return std::all_of(rows.begin(), rows.end(), [](const TraceRow& r) { return r.final.holds; });
    }
    bool all_chains_consistent() const {
        return std::all_of(rows.begin(), rows.end(),
                           [](const TraceRow& r) { return r.chain_consistent; });
    }
};

/// Hypotheses for the local weak-RSTL chain. WCI is checked in addition to SI
/// and No Future Bias because the recombination steps use it.
struct HypothesisAudit {
    Verdict wci;
    Verdict si;
    Verdict no_future_bias;

    bool all_hold() const { return wci.holds() && si.holds() && no_future_bias.holds(); }
};

inline HypothesisAudit audit_hypotheses(const Model& m, const Tolerances& tol) {
    HypothesisAudit h;
    h.wci = check_wci(m, tol).verdict;
    h.si = check_stochastic_impatience(m, is_expected_utility(m) ? SiMode::both : SiMode::fourpoint, tol)
               .verdict;
    h.no_future_bias = check_future_bias(m, FutureBiasMode::separable_logconvexity, tol).averse.verdict;
    return h;
}

inline IncompatibilityTrace demo_local_rstl(const Model& m, double x, double t, std::size_t n_tau,
                                            const Tolerances& tol) {
    tol.validate();
    if (n_tau == 0) throw Error(Errc::invalid_argument, "n_tau must be positive");
    const Domain& dom = domain_of(m);
    // x = max X is fine: only smaller prizes are searched for.
    if (!(x > dom.x().lo && x <= dom.x().hi && dom.t().interior(t)))
        throw Error(Errc::out_of_domain, "need min X < x <= max X and t interior to T");

    const HypothesisAudit h = audit_hypotheses(m, tol);
    if (!h.wci.holds()) throw Error(Errc::hypothesis_failed, "hypothesis failed: wci");
    if (!h.si.holds()) throw Error(Errc::hypothesis_failed, "hypothesis failed: stochastic_impatience");
    if (!h.no_future_bias.holds())
        throw Error(Errc::hypothesis_failed, "hypothesis failed: no_future_bias");

    const SolveSettings ss = solve_settings(tol);
    IncompatibilityTrace tr;
    tr.x = x;
    tr.t = t;
    tr.wci = h.wci;
    tr.si = h.si;
    tr.no_future_bias = h.no_future_bias;
    tr.eq_tol = tol.eq_tol;
    tr.lemma = local_radius(m, x, t, ss);
    // The chain also needs t + tau inside T.
    tr.radius = std::min(tr.lemma.s, dom.t().hi - t);

    const double eq = tol.eq_tol;
    auto ge = [eq](double l, double r) { return Comparison{l, r, l - r >= -eq}; };
    auto same = [eq](double l, double r) { return Comparison{l, r, std::abs(l - r) <= eq}; };

    for (std::size_t k = 1; k <= n_tau; ++k) {
        TraceRow row;
        row.tau = tr.radius * static_cast<double>(k) / static_cast<double>(n_tau + 1);
        const auto y = find_indifferent_prize(m, x, t, row.tau, ss);
        if (!y) throw Error(Errc::unbracketed, "no indifferent prize inside the local radius");
        row.y = *y;
        const Outcome late{x, t + row.tau}, early{x, t - row.tau}, now{x, t};
        const Outcome y_now{row.y, t}, y_early{row.y, t - row.tau};

        const double v_spread = eval_half_half(m, late, early);
        const double v_mid1 = eval_half_half(m, y_now, early);
        const double v_mid2 = eval_half_half(m, now, y_early);
        const double v_point = eval_outcome(m, now);

        row.premise = ge(eval_outcome(m, late), eval_outcome(m, y_now));
        row.step1 = ge(v_spread, v_mid1);
        row.step2 = ge(v_mid1, v_mid2);
        row.step3 = same(v_mid2, v_point);
        row.final = ge(v_spread, v_point);
        // Steps within eq_tol each compose to the final comparison within 3 eq_tol.
        const bool steps = row.step1.holds && row.step2.holds && row.step3.holds;
        row.chain_consistent = !steps || v_spread - v_point >= -3.0 * eq;
        tr.rows.push_back(row);
    }
    return tr;
}

inline IncompatibilityTrace demo_local_rstl(const Model& m, double x, double t, std::size_t n_tau) {
    return demo_local_rstl(m, x, t, n_tau, scaled_tolerances(m));
}

// ---------------------------------------------------------------------------
// GLBU trade-off

struct TradeoffRow {
    double pi = 0.0;
    Verdict si;
    std::size_t weak_ratl_instances = 0;  // midpoint comparisons strictly favouring the sure time
    Verdict weak_ratl;
    Verdict no_future_bias;

    bool si_holds() const { return si.holds(); }
    /// SI together with a strict weak-RATL instance would contradict the
    /// incompatibility under GLBU.
    bool conflict() const { return si.holds() && weak_ratl_instances > 0; }
};

inline std::vector<TradeoffRow> glbu_tradeoff_demo(const std::vector<double>& pi_grid,
                                                   const SeparableUtility& base, const Domain& domain,
                                                   const Tolerances& base_tol, unsigned threads = 0) {
    base_tol.validate();
    std::vector<TradeoffRow> rows(pi_grid.size());
    // Validate every model up front so errors surface before any work.
    std::vector<Model> models;
    models.reserve(pi_grid.size());
    for (double pi : pi_grid) models.emplace_back(Glbu(base, pi, domain));
    detail::parallel_for(pi_grid.size(), threads, [&](std::size_t i) {
        const Model& m = models[i];
        const Tolerances tol = scaled_tolerances(m, base_tol);
        TradeoffRow& r = rows[i];
        r.pi = pi_grid[i];
        r.si = check_stochastic_impatience(m, SiMode::fourpoint, tol).verdict;
        const AttitudeResult weak = check_ratl(m, RatlMode::midpoint, tol);
        r.weak_ratl = weak.averse.verdict;
        r.weak_ratl_instances = weak.averse.counts.strict;
        r.no_future_bias = check_future_bias(m, FutureBiasMode::separable_logconvexity, tol).averse.verdict;
    });
    return rows;
}

/// 0.05, 0.10, ..., 0.95
inline std::vector<double> default_pi_grid() {
    std::vector<double> g;
    for (int k = 1; k <= 19; ++k) g.push_back(k / 20.0);
    return g;
}

// ---------------------------------------------------------------------------
// Region scan over (a, b) for phi = -(-ln y)^b, D = d^(t^a)

struct RegionCell {
    double a = 0.0;
    double b = 0.0;
    bool valid = false;         // a > 1, 0 < b < 1
    bool in_guarantee = false;  // additionally b > 1/a
    bool strict_si = false;
    bool strict_ratl = false;
    std::string reason;  // why a cell was skipped, or "outside-guarantee"
};

struct RegionMap {
    Interval a_range;
    Interval b_range;
    double d = 0.0;
    ValueSpec v;
    Domain domain{Interval{1.0, 2.0}, Interval{0.0, 1.0}};
    std::size_t cells = 0;
    std::size_t grid_n = 0;
    std::vector<RegionCell> cell;  // row-major, a outer

    std::size_t guarantee_failures() const {
        return static_cast<std::size_t>(std::count_if(cell.begin(), cell.end(), [](const RegionCell& c) {
            return c.in_guarantee && !(c.strict_si && c.strict_ratl);
        }));
    }
};

inline MultiplicativeEU example_model(double a, double b, double d, const ValueSpec& v,
                                      const Domain& domain,
                                      PowerExpGuard guard = PowerExpGuard::enforce) {
    return MultiplicativeEU(NegNegLogPowCurvature{b}, PowerExponentDiscount{d, a}, v, domain, {}, guard);
}

/// Strict SI and strict RATL flags for one (a, b). Uses the same modes as audit().
inline std::pair<bool, bool> example_cell_flags(const MultiplicativeEU& eu, const Tolerances& base) {
    const Model m = eu;
    const Tolerances tol = scaled_tolerances(m, base);
    const bool si = check_stochastic_impatience(m, SiMode::both, tol).verdict.strict();
    const bool ratl = check_ratl(m, RatlMode::concavity, tol).averse.verdict.strict();
    return {si, ratl};
}

inline RegionMap scan_example_region(Interval a_range, Interval b_range, double d, const ValueSpec& v,
                                     const Domain& domain, std::size_t cells, Tolerances base = {},
                                     unsigned threads = 0) {
    if (!(d > 0.0 && d < 1.0)) throw Error(Errc::validation, "d must lie in (0,1)");
    if (cells < 1) throw Error(Errc::invalid_argument, "cells must be positive");
    if (!(a_range.lo <= a_range.hi) || !(b_range.lo <= b_range.hi))
        throw Error(Errc::invalid_argument, "ranges must be ordered");
    validate(v);
    if (!(value(v, domain.x().hi) < 1.0) || !(value(v, domain.x().lo) > 0.0))
        throw Error(Errc::validation, "Range(v) must lie in (0,1)");
    base.validate();

    RegionMap map{a_range, b_range, d, v, domain, cells, base.grid_n, {}};
    auto axis = [cells](Interval r) {
        return cells == 1 || r.lo == r.hi ? std::vector<double>(cells, r.lo) : linspace(r, cells);
    };
    const auto as = axis(a_range);
    const auto bs = axis(b_range);
    map.cell.resize(cells * cells);
    detail::parallel_for(map.cell.size(), threads, [&](std::size_t k) {
        RegionCell& c = map.cell[k];
        c.a = as[k / cells];
        c.b = bs[k % cells];
        c.valid = c.a > 1.0 && c.b > 0.0 && c.b < 1.0;
        if (!c.valid) {
            c.reason = "invalid: needs a > 1 and 0 < b < 1";
            return;
        }
        c.in_guarantee = c.b > 1.0 / c.a;
        if (!c.in_guarantee) c.reason = "outside-guarantee";
        try {
            const auto eu = example_model(c.a, c.b, d, v, domain, PowerExpGuard::relaxed);
            std::tie(c.strict_si, c.strict_ratl) = example_cell_flags(eu, base);
            if (c.in_guarantee && !(c.strict_si && c.strict_ratl))
                c.reason = "guarantee not resolved: margin below strict_margin at this grid";
        } catch (const Error& e) {
            c.valid = false;
            c.in_guarantee = false;
            c.reason = std::string("invalid: ") + e.what();
        }
    });
    return map;
}

inline RegionMap scan_example_region(Interval a_range, Interval b_range, double d, const ValueSpec& v,
                                     const Domain& domain, std::size_t cells, unsigned threads) {
    Tolerances base;
    base.grid_n = 21;
    return scan_example_region(a_range, b_range, d, v, domain, cells, base, threads);
}

// ---------------------------------------------------------------------------
// Analytic vs finite-difference derivatives

struct DerivativeAgreement {
    std::size_t points = 0;
    bool u_xt_negative = true;
    bool u_tt_negative = true;
    double max_rel_err_xt = 0.0;
    double max_rel_err_tt = 0.0;
};

/// Interior grid points only; central differences with step fd_step_frac of
/// each axis length.
inline DerivativeAgreement compare_derivatives(const MultiplicativeEU& eu, const Tolerances& tol) {
    const Domain& dom = eu.domain();
    const auto xs = linspace(dom.x(), tol.grid_n);
    const auto ts = linspace(dom.t(), tol.grid_n);
    const double hx = tol.fd_step_frac * dom.x().length();
    const double ht = tol.fd_step_frac * dom.t().length();
    DerivativeAgreement out;
    for (std::size_t i = 1; i + 1 < xs.size(); ++i)
        for (std::size_t j = 1; j + 1 < ts.size(); ++j) {
            const auto an = eu.derivatives(xs[i], ts[j]);
            const double fxt = detail::fd_mixed_partial(eu, xs[i], ts[j], hx, ht);
            const double ftt = detail::fd_second_time(eu, xs[i], ts[j], ht);
            ++out.points;
            out.u_xt_negative = out.u_xt_negative && an.u_xt < 0.0;
            out.u_tt_negative = out.u_tt_negative && an.u_tt < 0.0;
            out.max_rel_err_xt = std::max(out.max_rel_err_xt, std::abs(fxt - an.u_xt) / std::abs(an.u_xt));
            out.max_rel_err_tt = std::max(out.max_rel_err_tt, std::abs(ftt - an.u_tt) / std::abs(an.u_tt));
        }
    return out;
}

// ---------------------------------------------------------------------------
// Ranking invariance

struct RankingDisagreement {
    Lottery p;
    Lottery q;
    double diff_first = 0.0;   // V1(p) - V1(q)
    double diff_second = 0.0;  // V2(p) - V2(q)
};

struct InvarianceResult {
    std::size_t pairs = 0;
    std::size_t disagreements = 0;
    std::optional<RankingDisagreement> witness;  // first disagreeing pair

    bool agree() const { return disagreements == 0; }
    explicit operator bool() const { return agree(); }
};

namespace detail {

inline Lottery random_lottery(Rng& rng, const Domain& dom) {
    const std::size_t k = rng.integer(1, 4);
    const auto w = rng.simplex(k);
    std::vector<Atom> atoms;
    for (std::size_t a = 0; a < k; ++a)
        atoms.push_back({{rng.uniform(dom.x().lo, dom.x().hi), rng.uniform(dom.t().lo, dom.t().hi)}, w[a]});
    return make_lottery(atoms, dom);
}

inline int rank_sign(double diff, double tie) { return diff > tie ? 1 : (diff < -tie ? -1 : 0); }

}  // namespace detail

/// Samples n_pairs lottery pairs on the first model's domain and compares the
/// sign of the value difference under both models. |diff| <= eq_tol (scaled
/// per model) is a tie.
inline InvarianceResult compare_rankings(const Model& first, const Model& second, std::size_t n_pairs,
                                         const Tolerances& base = {}) {
    const Domain& dom = domain_of(first);
    const double tie1 = scaled_tolerances(first, base).eq_tol;
    const double tie2 = scaled_tolerances(second, base).eq_tol;
    Rng rng = Rng::stream(base.seed, "invariance");
    InvarianceResult out;
    for (std::size_t k = 0; k < n_pairs; ++k) {
        const Lottery p = detail::random_lottery(rng, dom);
        const Lottery q = detail::random_lottery(rng, dom);
        const double d1 = eval_lottery(first, p) - eval_lottery(first, q);
        const double d2 = eval_lottery(second, p) - eval_lottery(second, q);
        ++out.pairs;
        if (detail::rank_sign(d1, tie1) != detail::rank_sign(d2, tie2)) {
            ++out.disagreements;
            if (!out.witness) out.witness = RankingDisagreement{p, q, d1, d2};
        }
    }
    return out;
}

inline InvarianceResult invariance_suite(const MultiplicativeEU& m, double a, double b1, double b2,
                                         std::size_t n_pairs, const Tolerances& base = {}) {
    return compare_rankings(m, apply_representation_transform(m, a, b1, b2), n_pairs, base);
}

/// Negative control: the component transform without the compensating phi.
inline InvarianceResult invariance_control(const MultiplicativeEU& m, double a, double b1, double b2,
                                           std::size_t n_pairs, const Tolerances& base = {}) {
    return compare_rankings(m, apply_unadjusted_transform(m, a, b1, b2), n_pairs, base);
}

}  // namespace timelot
