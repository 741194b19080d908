#pragma once

// One-dimensional monotone solvers: indifference prizes, the local radius
// around an interior outcome, and time certainty equivalents. All of them are
// bisections that lean on Outcome Monotonicity or Impatience for the bracket.

#include <cstdio>
#include <optional>

#include "timelot/models.hpp"

namespace timelot {

struct SolveSettings {
    double bisect_tol = 1e-10;  // fraction of the searched axis length
    int max_iter = 200;
    double eq_tol = 1e-9;  // utility units

    void validate() const {
        if (!(bisect_tol > 0.0) || !(eq_tol > 0.0))
            throw Error(Errc::validation, "solver tolerances must be positive");
        if (max_iter < 64) throw Error(Errc::validation, "max_iter must be at least 64");
    }
};

inline SolveSettings solve_settings(const Tolerances& tol) {
    return SolveSettings{tol.bisect_tol, 200, tol.eq_tol};
}

namespace detail {

/// Root of an increasing g on [lo, hi] with g(lo) <= 0 <= g(hi). Returns the
/// bracket end with the smaller residual. Halving continues past bisect_tol
/// while the residual exceeds eq_tol; a residual that survives a bracket of
/// adjacent doubles means g jumps there.
template <typename G>
double bisect_increasing(G&& g, double lo, double hi, const SolveSettings& s) {
    const double width_tol = s.bisect_tol * (hi - lo);
    double g_lo = g(lo);
    double g_hi = g(hi);
    auto unresolved = [&] { return std::min(std::abs(g_lo), std::abs(g_hi)) > s.eq_tol; };
    int iter = 0;
    for (; iter < s.max_iter && (hi - lo > width_tol || unresolved()); ++iter) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double g_mid = g(mid);
        if (g_mid <= 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
            g_hi = g_mid;
        }
    }
    const bool take_lo = std::abs(g_lo) <= std::abs(g_hi);
    const double root = take_lo ? lo : hi;
    const double resid = take_lo ? g_lo : g_hi;
    if (std::abs(resid) > s.eq_tol) {
        if (iter >= s.max_iter)
            throw Error(Errc::max_iter_exceeded, "bisection did not converge");
        char buf[96];
        std::snprintf(buf, sizeof buf, "bracket collapsed with residual %.3g", resid);
        throw Error(Errc::non_monotone_evaluation, buf);
    }
    return root;
}

}  // namespace detail

/// Prize y < x with delta_(y, t - tau) ~ delta_(x, t), or nullopt when even
/// the worst prize at t - tau is strictly preferred (tau beyond reach).
inline std::optional<double> find_indifferent_prize(const Model& m, double x, double t, double tau,
                                                    const SolveSettings& s) {
    s.validate();
    const Domain& dom = domain_of(m);
    if (!(tau > 0.0)) throw Error(Errc::invalid_argument, "tau must be positive");
    if (!dom.contains({x, t})) throw Error(Errc::out_of_domain, "(x, t) lies outside the domain");
    const double earlier = t - tau;
    if (!(earlier >= dom.t().lo)) throw Error(Errc::out_of_domain, "t - tau lies before min T");

    const double target = eval_outcome(m, {x, t});
    auto g = [&](double y) { return eval_outcome(m, {y, earlier}) - target; };
    const double g_top = g(x);
    if (g_top < -s.eq_tol)
        throw Error(Errc::non_monotone_evaluation, "earlier delivery of x is not preferred");
    const double x_lo = dom.x().lo;
    if (g(x_lo) > 0.0) return std::nullopt;
    if (x_lo == x) return x;
    return detail::bisect_increasing(g, x_lo, x, s);
}

struct LocalRadius {
    double s = 0.0;
    int proof_case = 0;           // 1: worst prize can match (x, t) earlier; 2: it cannot
    std::optional<double> match;  // d with delta_(min X, d) ~ delta_(x, t) in case 1
};

/// Radius s > 0 such that every tau in (0, s) admits an indifferent prize.
inline LocalRadius local_radius(const Model& m, double x, double t, const SolveSettings& s) {
    s.validate();
    const Domain& dom = domain_of(m);
    if (!(x > dom.x().lo && x <= dom.x().hi && t > dom.t().lo && t <= dom.t().hi))
        throw Error(Errc::out_of_domain, "(x, t) must be interior");
    const double w = dom.x().lo;
    const double target = eval_outcome(m, {x, t});
    if (eval_outcome(m, {w, dom.t().lo}) >= target) {
        // V(w, .) decreases in time; find the match d in [min T, t].
        auto g = [&](double c) { return target - eval_outcome(m, {w, c}); };
        const double d = detail::bisect_increasing(g, dom.t().lo, t, s);
        return {t - d, 1, d};
    }
    return {t - dom.t().lo, 2, std::nullopt};
}

enum class TimeRiskAttitude { risk_averse, risk_seeking, neutral };

inline const char* attitude_name(TimeRiskAttitude a) {
    switch (a) {
        case TimeRiskAttitude::risk_averse: return "risk_averse";
        case TimeRiskAttitude::risk_seeking: return "risk_seeking";
        case TimeRiskAttitude::neutral: return "neutral";
    }
    return "?";
}

struct TimeCertaintyEquivalent {
    double t_star = 0.0;
    double t_bar = 0.0;
    double value = 0.0;  // V(p)
    double risk_premium() const { return t_star - t_bar; }
    TimeRiskAttitude attitude = TimeRiskAttitude::neutral;
};

/// Delivery time t* with delta_(x, t*) ~ p for a time lottery p with prize x.
inline TimeCertaintyEquivalent time_certainty_equivalent(const Model& m, const Lottery& p,
                                                         const SolveSettings& s) {
    s.validate();
    if (!is_time_lottery(p)) throw Error(Errc::not_a_time_lottery, "lottery mixes prizes");
    const Domain& dom = domain_of(m);
    const double x = p.atoms().front().outcome.x;
    const double target = eval_lottery(m, p);
    const double v_early = eval_outcome(m, {x, dom.t().lo});
    const double v_late = eval_outcome(m, {x, dom.t().hi});
    if (target > v_early + s.eq_tol || target < v_late - s.eq_tol)
        throw Error(Errc::unbracketed, "V(p) is not between V(x, max T) and V(x, min T)");

    TimeCertaintyEquivalent out;
    out.t_bar = expected_time(p);
    out.value = target;
    if (target >= v_early) {
        out.t_star = dom.t().lo;
    } else if (target <= v_late) {
        out.t_star = dom.t().hi;
    } else {
        auto g = [&](double c) { return target - eval_outcome(m, {x, c}); };
        out.t_star = detail::bisect_increasing(g, dom.t().lo, dom.t().hi, s);
    }
    const double tie = 10.0 * s.bisect_tol * dom.t().length();
    if (out.t_star > out.t_bar + tie)
        out.attitude = TimeRiskAttitude::risk_averse;
    else if (out.t_star < out.t_bar - tie)
        out.attitude = TimeRiskAttitude::risk_seeking;
    return out;
}

}  // namespace timelot
