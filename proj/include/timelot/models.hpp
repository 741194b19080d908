#pragma once

// Model catalog: multiplicative expected utility phi(D(t) v(x)) built from
// closed-form component families, GLBU on half-half binaries, and the
// disappointment model. Every catalog member carries analytic first and second
// derivatives.

#include <cmath>
#include <sstream>
#include <string>
#include <variant>

#include "timelot/core.hpp"

namespace timelot {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

/// Value with first and second derivative.
struct Derivs {
    double f = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

// ---------------------------------------------------------------------------
// Curvature phi

struct IdentityCurvature {
    friend bool operator==(const IdentityCurvature&, const IdentityCurvature&) = default;
};
/// phi(y) = y^gamma
struct PowerCurvature {
    double gamma = 1.0;
    friend bool operator==(const PowerCurvature&, const PowerCurvature&) = default;
};
/// phi(y) = -(-ln y)^b on (0, 1)
struct NegNegLogPowCurvature {
    double b = 0.5;
    friend bool operator==(const NegNegLogPowCurvature&, const NegNegLogPowCurvature&) = default;
};

using CurvatureSpec = std::variant<IdentityCurvature, PowerCurvature, NegNegLogPowCurvature>;

inline void validate(const CurvatureSpec& phi) {
    std::visit(overloaded{
                   [](const IdentityCurvature&) {},
                   [](const PowerCurvature& c) {
                       if (!(c.gamma > 0.0) || !std::isfinite(c.gamma))
                           throw Error(Errc::validation, "γ must be positive");
                   },
                   [](const NegNegLogPowCurvature& c) {
                       if (!(c.b > 0.0 && c.b < 1.0))
                           throw Error(Errc::validation, "b must lie in (0,1)");
                   },
               },
               phi);
}

inline bool curvature_accepts(const CurvatureSpec& phi, double y) {
    return std::visit(overloaded{
                          [&](const IdentityCurvature&) { return std::isfinite(y); },
                          [&](const PowerCurvature&) { return y > 0.0 && std::isfinite(y); },
                          [&](const NegNegLogPowCurvature&) { return y > 0.0 && y < 1.0; },
                      },
                      phi);
}

inline Derivs curvature_derivs(const CurvatureSpec& phi, double y) {
    if (!curvature_accepts(phi, y))
        throw Error(Errc::curvature_domain,
                    "curvature argument " + std::to_string(y) + " outside its valid range");
    return std::visit(
        overloaded{
            [&](const IdentityCurvature&) { return Derivs{y, 1.0, 0.0}; },
            [&](const PowerCurvature& c) {
                const double g = c.gamma;
                return Derivs{std::pow(y, g), g * std::pow(y, g - 1.0),
                              g * (g - 1.0) * std::pow(y, g - 2.0)};
            },
            [&](const NegNegLogPowCurvature& c) {
                // s = -ln y > 0, phi = -s^b, ds/dy = -1/y
                const double b = c.b;
                const double s = -std::log(y);
                const double d1 = b * std::pow(s, b - 1.0) / y;
                const double d2 = -b * (b - 1.0) * std::pow(s, b - 2.0) / (y * y) - d1 / y;
                return Derivs{-std::pow(s, b), d1, d2};
            },
        },
        phi);
}

inline double curvature(const CurvatureSpec& phi, double y) { return curvature_derivs(phi, y).f; }

/// phi(exp(z)) in closed form.
inline double curvature_of_exp(const CurvatureSpec& phi, double z) {
    return std::visit(overloaded{
                          [&](const IdentityCurvature&) { return std::exp(z); },
                          [&](const PowerCurvature& c) { return std::exp(c.gamma * z); },
                          [&](const NegNegLogPowCurvature& c) {
                              if (!(z < 0.0))
                                  throw Error(Errc::curvature_domain,
                                              "phi*(z) requires z < 0 for neg_neglog_pow");
                              return -std::pow(-z, c.b);
                          },
                      },
                      phi);
}

// ---------------------------------------------------------------------------
// Discount D

/// beta^t
struct ExponentialDiscount {
    double beta = 0.9;
    friend bool operator==(const ExponentialDiscount&, const ExponentialDiscount&) = default;
};
/// 1 / (1 + k t)
struct HyperbolicDiscount {
    double k = 1.0;
    friend bool operator==(const HyperbolicDiscount&, const HyperbolicDiscount&) = default;
};
/// (1 + alpha t)^(-beta / alpha)
struct QuasiHyperbolicDiscount {
    double alpha = 1.0;
    double beta = 1.0;
    friend bool operator==(const QuasiHyperbolicDiscount&, const QuasiHyperbolicDiscount&) = default;
};
/// d^(t^a)
struct PowerExponentDiscount {
    double d = 0.9;
    double a = 2.0;
    friend bool operator==(const PowerExponentDiscount&, const PowerExponentDiscount&) = default;
};
/// exp(-t - t^3 / 3)
struct ExpCubicDiscount {
    friend bool operator==(const ExpCubicDiscount&, const ExpCubicDiscount&) = default;
};

using DiscountSpec = std::variant<ExponentialDiscount, HyperbolicDiscount, QuasiHyperbolicDiscount,
                                  PowerExponentDiscount, ExpCubicDiscount>;

inline void validate(const DiscountSpec& D) {
    std::visit(overloaded{
                   [](const ExponentialDiscount& e) {
                       if (!(e.beta > 0.0 && e.beta < 1.0))
                           throw Error(Errc::validation, "β must lie in (0,1)");
                   },
                   [](const HyperbolicDiscount& h) {
                       if (!(h.k > 0.0) || !std::isfinite(h.k))
                           throw Error(Errc::validation, "k must be positive");
                   },
                   [](const QuasiHyperbolicDiscount& q) {
                       if (!(q.alpha > 0.0) || !std::isfinite(q.alpha))
                           throw Error(Errc::validation, "α must be positive");
                       if (!(q.beta > 0.0) || !std::isfinite(q.beta))
                           throw Error(Errc::validation, "β must be positive");
                   },
                   [](const PowerExponentDiscount& p) {
                       if (!(p.d > 0.0 && p.d < 1.0))
                           throw Error(Errc::validation, "d must lie in (0,1)");
                       if (!(p.a > 1.0) || !std::isfinite(p.a))
                           throw Error(Errc::validation, "a must exceed 1");
                   },
                   [](const ExpCubicDiscount&) {},
               },
               D);
}

inline double log_discount(const DiscountSpec& D, double t) {
    return std::visit(overloaded{
                          [&](const ExponentialDiscount& e) { return t * std::log(e.beta); },
                          [&](const HyperbolicDiscount& h) { return -std::log1p(h.k * t); },
                          [&](const QuasiHyperbolicDiscount& q) {
                              return -(q.beta / q.alpha) * std::log1p(q.alpha * t);
                          },
                          [&](const PowerExponentDiscount& p) {
                              return std::pow(t, p.a) * std::log(p.d);
                          },
                          [&](const ExpCubicDiscount&) { return -t - t * t * t / 3.0; },
                      },
                      D);
}

inline Derivs discount_derivs(const DiscountSpec& D, double t) {
    return std::visit(
        overloaded{
            [&](const ExponentialDiscount& e) {
                const double lb = std::log(e.beta);
                const double f = std::pow(e.beta, t);
                return Derivs{f, lb * f, lb * lb * f};
            },
            [&](const HyperbolicDiscount& h) {
                const double w = 1.0 + h.k * t;
                return Derivs{1.0 / w, -h.k / (w * w), 2.0 * h.k * h.k / (w * w * w)};
            },
            [&](const QuasiHyperbolicDiscount& q) {
                const double w = 1.0 + q.alpha * t;
                const double e = -q.beta / q.alpha;
                return Derivs{std::pow(w, e), -q.beta * std::pow(w, e - 1.0),
                              q.beta * (q.beta + q.alpha) * std::pow(w, e - 2.0)};
            },
            [&](const PowerExponentDiscount& p) {
                const double ld = std::log(p.d);
                const double f = std::exp(std::pow(t, p.a) * ld);
                const double g1 = p.a * std::pow(t, p.a - 1.0) * ld;  // (ln D)'
                const double g2 = p.a * (p.a - 1.0) * std::pow(t, p.a - 2.0) * ld;
                return Derivs{f, g1 * f, (g1 * g1 + g2) * f};
            },
            [&](const ExpCubicDiscount&) {
                const double f = std::exp(-t - t * t * t / 3.0);
                const double w = 1.0 + t * t;
                return Derivs{f, -w * f, (w * w - 2.0 * t) * f};
            },
        },
        D);
}

inline double discount(const DiscountSpec& D, double t) { return discount_derivs(D, t).f; }

// ---------------------------------------------------------------------------
// Value v

struct IdentityValue {
    friend bool operator==(const IdentityValue&, const IdentityValue&) = default;
};
/// x^gamma
struct PowerValue {
    double gamma = 1.0;
    friend bool operator==(const PowerValue&, const PowerValue&) = default;
};
/// c x / (1 + x)
struct BoundedRatioValue {
    double c = 1.0;
    friend bool operator==(const BoundedRatioValue&, const BoundedRatioValue&) = default;
};

using ValueSpec = std::variant<IdentityValue, PowerValue, BoundedRatioValue>;

inline void validate(const ValueSpec& v) {
    std::visit(overloaded{
                   [](const IdentityValue&) {},
                   [](const PowerValue& p) {
                       if (!(p.gamma > 0.0) || !std::isfinite(p.gamma))
                           throw Error(Errc::validation, "γ must be positive");
                   },
                   [](const BoundedRatioValue& b) {
                       if (!(b.c > 0.0 && b.c <= 1.0))
                           throw Error(Errc::validation, "c must lie in (0,1]");
                   },
               },
               v);
}

inline double log_value(const ValueSpec& v, double x) {
    return std::visit(overloaded{
                          [&](const IdentityValue&) { return std::log(x); },
                          [&](const PowerValue& p) { return p.gamma * std::log(x); },
                          [&](const BoundedRatioValue& b) {
                              return std::log(b.c) + std::log(x) - std::log1p(x);
                          },
                      },
                      v);
}

inline Derivs value_derivs(const ValueSpec& v, double x) {
    return std::visit(overloaded{
                          [&](const IdentityValue&) { return Derivs{x, 1.0, 0.0}; },
                          [&](const PowerValue& p) {
                              const double g = p.gamma;
                              return Derivs{std::pow(x, g), g * std::pow(x, g - 1.0),
                                            g * (g - 1.0) * std::pow(x, g - 2.0)};
                          },
                          [&](const BoundedRatioValue& b) {
                              const double w = 1.0 + x;
                              return Derivs{b.c * x / w, b.c / (w * w), -2.0 * b.c / (w * w * w)};
                          },
                      },
                      v);
}

inline double value(const ValueSpec& v, double x) { return value_derivs(v, x).f; }

// ---------------------------------------------------------------------------
// Multiplicative expected utility

/// Positive linear transformation of ln D and ln v:
///   ln D' = scale ln D + discount_shift, ln v' = scale ln v + value_shift,
///   phi'(y) = phi(exp((ln y - discount_shift - value_shift) / scale)).
/// adjust_curvature = false keeps phi unchanged; that variant does not
/// represent the same preference and exists for negative controls.
struct LogAffine {
    double scale = 1.0;
    double discount_shift = 0.0;
    double value_shift = 0.0;
    bool adjust_curvature = true;

    bool is_identity() const {
        return scale == 1.0 && discount_shift == 0.0 && value_shift == 0.0 && adjust_curvature;
    }

    /// Apply `next` after `*this`.
    LogAffine then(const LogAffine& next) const {
        return {next.scale * scale, next.scale * discount_shift + next.discount_shift,
                next.scale * value_shift + next.value_shift,
                adjust_curvature && next.adjust_curvature};
    }

    friend bool operator==(const LogAffine&, const LogAffine&) = default;
};

/// Whether the parameter constraints that guarantee strict SI and strict RATL
/// for phi = neg_neglog_pow with D = power_exponent are enforced.
enum class PowerExpGuard { enforce, relaxed };

struct UtilityDerivatives {
    double u = 0.0;
    double u_x = 0.0;
    double u_t = 0.0;
    double u_xt = 0.0;
    double u_tt = 0.0;
};

class MultiplicativeEU {
public:
    MultiplicativeEU(CurvatureSpec phi, DiscountSpec D, ValueSpec v, Domain domain,
                     LogAffine transform = {}, PowerExpGuard guard = PowerExpGuard::enforce)
        : phi_(phi), discount_(D), value_(v), domain_(domain), transform_(transform) {
        timelot::validate(phi_);
        timelot::validate(discount_);
        timelot::validate(value_);
        if (!(transform_.scale > 0.0) || !std::isfinite(transform_.scale))
            throw Error(Errc::invalid_argument, "transform scale must be positive");
        if (guard == PowerExpGuard::enforce) check_power_exp_constraints();
        check_component_ranges();
    }

    const CurvatureSpec& phi() const { return phi_; }
    const DiscountSpec& discount_spec() const { return discount_; }
    const ValueSpec& value_spec() const { return value_; }
    const Domain& domain() const { return domain_; }
    const LogAffine& transform() const { return transform_; }

    double log_discount_at(double t) const {
        return transform_.scale * log_discount(discount_, t) + transform_.discount_shift;
    }
    double log_value_at(double x) const {
        return transform_.scale * log_value(value_, x) + transform_.value_shift;
    }
    double discount_at(double t) const {
        return transform_.is_identity() ? discount(discount_, t) : std::exp(log_discount_at(t));
    }
    double value_at(double x) const {
        return transform_.is_identity() ? value(value_, x) : std::exp(log_value_at(x));
    }
    double curvature_at(double y) const {
        if (!transform_.adjust_curvature || transform_.is_identity()) return curvature(phi_, y);
        return curvature(phi_, std::exp(inner_log(y)));
    }
    /// phi'(exp(z)), evaluated in closed form.
    double curvature_of_exp_at(double z) const {
        if (!transform_.adjust_curvature) return curvature_of_exp(phi_, z);
        return curvature_of_exp(phi_, (z - transform_.discount_shift - transform_.value_shift) /
                                          transform_.scale);
    }

    double utility(double x, double t) const { return curvature_at(discount_at(t) * value_at(x)); }

    /// Analytic derivatives of u(x, t) = phi'(D'(t) v'(x)) by the chain rule.
    UtilityDerivatives derivatives(double x, double t) const {
        Derivs D = discount_derivs(discount_, t);
        Derivs v = value_derivs(value_, x);
        if (!transform_.is_identity()) {
            const double a = transform_.scale;
            const double Dt = std::exp(log_discount_at(t));
            const double rd1 = D.d1 / D.f;
            const double rd2 = D.d2 / D.f;
            D = {Dt, a * rd1 * Dt, Dt * (a * (a - 1.0) * rd1 * rd1 + a * rd2)};
            const double vx = std::exp(log_value_at(x));
            const double rv1 = v.d1 / v.f;
            const double rv2 = v.d2 / v.f;
            v = {vx, a * rv1 * vx, vx * (a * (a - 1.0) * rv1 * rv1 + a * rv2)};
        }
        const double y = D.f * v.f;
        const Derivs P = outer_derivs(y);
        UtilityDerivatives out;
        out.u = P.f;
        out.u_x = P.d1 * D.f * v.d1;
        out.u_t = P.d1 * D.d1 * v.f;
        out.u_xt = P.d2 * (D.d1 * v.f) * (D.f * v.d1) + P.d1 * D.d1 * v.d1;
        out.u_tt = P.d2 * (D.d1 * v.f) * (D.d1 * v.f) + P.d1 * D.d2 * v.f;
        return out;
    }

    friend bool operator==(const MultiplicativeEU&, const MultiplicativeEU&) = default;

private:
    double inner_log(double y) const {
        return (std::log(y) - transform_.discount_shift - transform_.value_shift) /
               transform_.scale;
    }

    // Derivatives of the effective curvature phi' at y.
    Derivs outer_derivs(double y) const {
        if (!transform_.adjust_curvature || transform_.is_identity())
            return curvature_derivs(phi_, y);
        const double a = transform_.scale;
        const double g = std::exp(inner_log(y));
        const double g1 = g / (a * y);
        const double g2 = g * (1.0 / a) * (1.0 / a - 1.0) / (y * y);
        const Derivs p = curvature_derivs(phi_, g);
        return {p.f, p.d1 * g1, p.d2 * g1 * g1 + p.d1 * g2};
    }

    void check_power_exp_constraints() const {
        const auto* c = std::get_if<NegNegLogPowCurvature>(&phi_);
        const auto* d = std::get_if<PowerExponentDiscount>(&discount_);
        if (!c || !d) return;
        if (!(c->b > 1.0 / d->a && c->b < 1.0))
            throw Error(Errc::validation, "b must lie in (1/a, 1)");
        if (!(value(value_, domain_.x().hi) < 1.0))
            throw Error(Errc::validation, "Range(v) must lie in (0,1)");
    }

    void check_component_ranges() const {
        const double d_lo = discount_at(domain_.t().hi);
        const double v_lo = value_at(domain_.x().lo);
        if (!(d_lo > 0.0)) throw Error(Errc::validation, "discount underflows to zero on T");
        if (!(v_lo > 0.0)) throw Error(Errc::validation, "value must be positive on X");
        const double y_min = d_lo * v_lo;
        const double y_max = discount_at(domain_.t().lo) * value_at(domain_.x().hi);
        const double probe_lo =
            transform_.adjust_curvature && !transform_.is_identity() ? std::exp(inner_log(y_min)) : y_min;
        const double probe_hi =
            transform_.adjust_curvature && !transform_.is_identity() ? std::exp(inner_log(y_max)) : y_max;
        if (!curvature_accepts(phi_, probe_lo) || !curvature_accepts(phi_, probe_hi))
            throw Error(Errc::curvature_domain, "phi is not defined on Range(D·v) over the domain");
    }

    CurvatureSpec phi_;
    DiscountSpec discount_;
    ValueSpec value_;
    Domain domain_;
    LogAffine transform_;
};

// ---------------------------------------------------------------------------
// Non-expected-utility families over a separable base u(x, t) = D(t) v(x)

struct SeparableUtility {
    DiscountSpec discount;
    ValueSpec value;

    void validate() const {
        timelot::validate(discount);
        timelot::validate(value);
    }
    double operator()(double x, double t) const {
        return timelot::discount(discount, t) * timelot::value(value, x);
    }

    friend bool operator==(const SeparableUtility&, const SeparableUtility&) = default;
};

/// Half-half binaries valued pi u(best) + (1 - pi) u(worst).
class Glbu {
public:
    Glbu(SeparableUtility base, double pi_half, Domain domain)
        : base_(std::move(base)), pi_half_(pi_half), domain_(domain) {
        base_.validate();
        if (!(pi_half > 0.0 && pi_half < 1.0))
            throw Error(Errc::validation, "π(½) must lie in (0,1)");
        if (!(discount(base_.discount, domain_.t().hi) > 0.0))
            throw Error(Errc::validation, "discount underflows to zero on T");
    }

    const SeparableUtility& base() const { return base_; }
    double pi_half() const { return pi_half_; }
    const Domain& domain() const { return domain_; }

    friend bool operator==(const Glbu&, const Glbu&) = default;

private:
    SeparableUtility base_;
    double pi_half_;
    Domain domain_;
};

/// R(z) = lambda (exp(kappa z) - 1)
struct ExpGain {
    double lambda = 0.5;
    double kappa = 1.0;

    double operator()(double z) const { return lambda * std::expm1(kappa * z); }

    friend bool operator==(const ExpGain&, const ExpGain&) = default;
};

struct MeanReference {
    friend bool operator==(const MeanReference&, const MeanReference&) = default;
};
struct ConstantReference {
    double u_bar = 0.0;
    friend bool operator==(const ConstantReference&, const ConstantReference&) = default;
};
using Reference = std::variant<MeanReference, ConstantReference>;

/// V(p) = E_p[u + R(u - u_bar)], u_bar the lottery mean of u or a constant.
class Disappointment {
public:
    Disappointment(SeparableUtility base, ExpGain gain, Reference reference, Domain domain)
        : base_(std::move(base)), gain_(gain), reference_(reference), domain_(domain) {
        base_.validate();
        if (!(gain.lambda > 0.0) || !(gain.kappa > 0.0) || !std::isfinite(gain.lambda) ||
            !std::isfinite(gain.kappa))
            throw Error(Errc::validation, "λ and κ must be positive");
        if (const auto* c = std::get_if<ConstantReference>(&reference_); c && !std::isfinite(c->u_bar))
            throw Error(Errc::validation, "ū must be finite");
        if (!(discount(base_.discount, domain_.t().hi) > 0.0))
            throw Error(Errc::validation, "discount underflows to zero on T");
    }

    const SeparableUtility& base() const { return base_; }
    const ExpGain& gain() const { return gain_; }
    const Reference& reference() const { return reference_; }
    const Domain& domain() const { return domain_; }

    friend bool operator==(const Disappointment&, const Disappointment&) = default;

private:
    SeparableUtility base_;
    ExpGain gain_;
    Reference reference_;
    Domain domain_;
};

using Model = std::variant<MultiplicativeEU, Glbu, Disappointment>;

inline const Domain& domain_of(const Model& m) {
    return std::visit([](const auto& mm) -> const Domain& { return mm.domain(); }, m);
}

inline bool is_expected_utility(const Model& m) {
    return std::holds_alternative<MultiplicativeEU>(m);
}

inline const char* family_name(const Model& m) {
    return std::visit(overloaded{
                          [](const MultiplicativeEU&) { return "multiplicative_eu"; },
                          [](const Glbu&) { return "glbu"; },
                          [](const Disappointment&) { return "disappointment"; },
                      },
                      m);
}

/// ln D'(t) of the model's degenerate ranking (the base discount for GLBU and
/// disappointment).
inline double log_discount_at(const Model& m, double t) {
    return std::visit(overloaded{
                          [&](const MultiplicativeEU& e) { return e.log_discount_at(t); },
                          [&](const auto& mm) { return log_discount(mm.base().discount, t); },
                      },
                      m);
}

inline double discount_at(const Model& m, double t) {
    return std::visit(overloaded{
                          [&](const MultiplicativeEU& e) { return e.discount_at(t); },
                          [&](const auto& mm) { return discount(mm.base().discount, t); },
                      },
                      m);
}

inline double value_at(const Model& m, double x) {
    return std::visit(overloaded{
                          [&](const MultiplicativeEU& e) { return e.value_at(x); },
                          [&](const auto& mm) { return value(mm.base().value, x); },
                      },
                      m);
}

/// Per-atom utility fed to the family's aggregator: phi(D v) for expected
/// utility, the base D v otherwise.
inline double atom_utility(const Model& m, const Outcome& o) {
    if (!domain_of(m).contains(o))
        throw Error(Errc::out_of_domain, "outcome (" + std::to_string(o.x) + ", " +
                                             std::to_string(o.t) + ") lies outside the domain");
    return std::visit(overloaded{
                          [&](const MultiplicativeEU& e) { return e.utility(o.x, o.t); },
                          [&](const auto& mm) { return mm.base()(o.x, o.t); },
                      },
                      m);
}

struct UtilityAtom {
    double u = 0.0;
    double p = 0.0;
};

inline double aggregate(const Model& m, std::span<const UtilityAtom> atoms) {
    return std::visit(
        overloaded{
            [&](const MultiplicativeEU&) {
                double s = 0.0;
                for (const auto& a : atoms) s += a.p * a.u;
                return s;
            },
            [&](const Glbu& g) {
                if (atoms.size() == 1) return atoms[0].u;
                if (atoms.size() != 2 || std::abs(atoms[0].p - 0.5) > 1e-12 ||
                    std::abs(atoms[1].p - 0.5) > 1e-12)
                    throw Error(Errc::unsupported_lottery_shape,
                                "GLBU evaluates only degenerate and half-half binary lotteries");
                const double hi = std::max(atoms[0].u, atoms[1].u);
                const double lo = std::min(atoms[0].u, atoms[1].u);
                return g.pi_half() * hi + (1.0 - g.pi_half()) * lo;
            },
            [&](const Disappointment& d) {
                double ubar = 0.0;
                if (const auto* c = std::get_if<ConstantReference>(&d.reference())) {
                    ubar = c->u_bar;
                } else {
                    for (const auto& a : atoms) ubar += a.p * a.u;
                }
                double s = 0.0;
                for (const auto& a : atoms) s += a.p * (a.u + d.gain()(a.u - ubar));
                return s;
            },
        },
        m);
}

inline double eval_lottery(const Model& m, const Lottery& p) {
    std::vector<UtilityAtom> atoms;
    atoms.reserve(p.size());
    for (const Atom& a : p.atoms()) atoms.push_back({atom_utility(m, a.outcome), a.p});
    return aggregate(m, atoms);
}

inline double eval_outcome(const Model& m, const Outcome& o) {
    const UtilityAtom a{atom_utility(m, o), 1.0};
    return aggregate(m, std::span<const UtilityAtom>(&a, 1));
}

/// Value of the half-half binary 1/2 delta_a + 1/2 delta_b.
inline double eval_half_half(const Model& m, const Outcome& a, const Outcome& b) {
    const UtilityAtom atoms[2] = {{atom_utility(m, a), 0.5}, {atom_utility(m, b), 0.5}};
    return aggregate(m, atoms);
}

inline std::string describe(const Model& m) {
    std::ostringstream os;
    os.precision(6);
    auto phi_name = [&](const CurvatureSpec& c) {
        std::visit(overloaded{
                       [&](const IdentityCurvature&) { os << "identity"; },
                       [&](const PowerCurvature& p) { os << "power(gamma=" << p.gamma << ")"; },
                       [&](const NegNegLogPowCurvature& n) { os << "neg_neglog_pow(b=" << n.b << ")"; },
                   },
                   c);
    };
    auto d_name = [&](const DiscountSpec& d) {
        std::visit(overloaded{
                       [&](const ExponentialDiscount& e) { os << "exponential(beta=" << e.beta << ")"; },
                       [&](const HyperbolicDiscount& h) { os << "hyperbolic(k=" << h.k << ")"; },
                       [&](const QuasiHyperbolicDiscount& q) {
                           os << "generalized_quasi_hyperbolic(alpha=" << q.alpha << ",beta=" << q.beta
                              << ")";
                       },
                       [&](const PowerExponentDiscount& p) {
                           os << "power_exponent(d=" << p.d << ",a=" << p.a << ")";
                       },
                       [&](const ExpCubicDiscount&) { os << "exp_cubic"; },
                   },
                   d);
    };
    auto v_name = [&](const ValueSpec& v) {
        std::visit(overloaded{
                       [&](const IdentityValue&) { os << "identity"; },
                       [&](const PowerValue& p) { os << "power(gamma=" << p.gamma << ")"; },
                       [&](const BoundedRatioValue& b) { os << "bounded_ratio(c=" << b.c << ")"; },
                   },
                   v);
    };
    std::visit(overloaded{
                   [&](const MultiplicativeEU& e) {
                       os << "multiplicative_eu(phi=";
                       phi_name(e.phi());
                       os << ", D=";
                       d_name(e.discount_spec());
                       os << ", v=";
                       v_name(e.value_spec());
                       if (!e.transform().is_identity())
                           os << ", transform=(" << e.transform().scale << ","
                              << e.transform().discount_shift << "," << e.transform().value_shift
                              << (e.transform().adjust_curvature ? "" : ",unadjusted") << ")";
                       os << ")";
                   },
                   [&](const Glbu& g) {
                       os << "glbu(pi=" << g.pi_half() << ", D=";
                       d_name(g.base().discount);
                       os << ", v=";
                       v_name(g.base().value);
                       os << ")";
                   },
                   [&](const Disappointment& d) {
                       os << "disappointment(lambda=" << d.gain().lambda << ", kappa=" << d.gain().kappa
                          << ", ref=";
                       if (const auto* c = std::get_if<ConstantReference>(&d.reference()))
                           os << "constant(" << c->u_bar << ")";
                       else
                           os << "mean";
                       os << ", D=";
                       d_name(d.base().discount);
                       os << ", v=";
                       v_name(d.base().value);
                       os << ")";
                   },
               },
               m);
    return os.str();
}

/// max |V(delta_(x,t))| over the grid_n x grid_n grid; the unit for
/// scale-aware tolerances.
inline double utility_scale(const Model& m, std::size_t grid_n = 41) {
    const Domain& dom = domain_of(m);
    double s = 0.0;
    for (double x : linspace(dom.x(), grid_n))
        for (double t : linspace(dom.t(), grid_n)) s = std::max(s, std::abs(eval_outcome(m, {x, t})));
    return s > 0.0 ? s : 1.0;
}

/// Defaults with eq_tol and strict_margin expressed relative to max |u| on the
/// grid (1e-9 and 1e-7 of the scale).
inline Tolerances scaled_tolerances(const Model& m, Tolerances base = {}) {
    const double s = utility_scale(m, base.grid_n);
    base.eq_tol *= s;
    base.strict_margin *= s;
    return base;
}

// ---------------------------------------------------------------------------
// Additive representation phi*(D*(t) + v*(x)) with phi* = phi o exp,
// D* = ln D, v* = ln v.

class AdditiveForm {
public:
    explicit AdditiveForm(MultiplicativeEU source) : source_(std::move(source)) {}

    double curvature_star(double z) const { return source_.curvature_of_exp_at(z); }
    double discount_star(double t) const { return source_.log_discount_at(t); }
    double value_star(double x) const { return source_.log_value_at(x); }
    double utility(double x, double t) const {
        return curvature_star(discount_star(t) + value_star(x));
    }

    const MultiplicativeEU& source() const { return source_; }

private:
    MultiplicativeEU source_;
};

inline AdditiveForm to_additive(const MultiplicativeEU& m) {
    const Domain& dom = m.domain();
    if (!(m.discount_at(dom.t().hi) > 0.0) || !(m.value_at(dom.x().lo) > 0.0))
        throw Error(Errc::non_positive_component, "D and v must be positive on the domain");
    return AdditiveForm(m);
}

/// phi = phi* o ln, D = exp(D*), v = exp(v*).
inline MultiplicativeEU to_multiplicative(const AdditiveForm& a) { return a.source(); }

/// Representation with ln D and ln v replaced by positive affine images and
/// phi adjusted so the preference is unchanged.
inline MultiplicativeEU apply_representation_transform(const MultiplicativeEU& m, double a,
                                                        double b1, double b2) {
    if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b1) || !std::isfinite(b2))
        throw Error(Errc::invalid_argument, "transform needs a > 0 and finite shifts");
    const LogAffine t = m.transform().then(LogAffine{a, b1, b2, true});
    return MultiplicativeEU(m.phi(), m.discount_spec(), m.value_spec(), m.domain(), t,
                            PowerExpGuard::relaxed);
}

/// Same component transform but phi left as is. Negative control only.
inline MultiplicativeEU apply_unadjusted_transform(const MultiplicativeEU& m, double a, double b1,
                                                   double b2) {
    if (!(a > 0.0)) throw Error(Errc::invalid_argument, "transform needs a > 0");
    const LogAffine t = m.transform().then(LogAffine{a, b1, b2, false});
    return MultiplicativeEU(m.phi(), m.discount_spec(), m.value_spec(), m.domain(), t,
                            PowerExpGuard::relaxed);
}

// ---------------------------------------------------------------------------
// Witness helpers

inline Witness lottery_witness(const Model& m, std::string check, const Lottery& left,
                               const Lottery& right) {
    Witness w;
    w.check = std::move(check);
    w.kind = WitnessKind::lotteries;
    w.left = left.atoms();
    w.right = right.atoms();
    w.lhs = eval_lottery(m, left);
    w.rhs = eval_lottery(m, right);
    return w;
}

inline double scalar_witness_value(const Model& m, WitnessKind kind, double arg) {
    switch (kind) {
        case WitnessKind::log_discount: return log_discount_at(m, arg);
        case WitnessKind::discount: return discount_at(m, arg);
        case WitnessKind::value: return value_at(m, arg);
        case WitnessKind::curvature_of_exp: {
            const auto* e = std::get_if<MultiplicativeEU>(&m);
            if (!e) throw Error(Errc::mode_unsupported, "curvature witness needs an EU model");
            return e->curvature_at(std::exp(arg));
        }
        case WitnessKind::lotteries: break;
    }
    throw Error(Errc::invalid_argument, "not a scalar witness kind");
}

inline Witness scalar_witness(const Model& m, std::string check, WitnessKind kind,
                              std::vector<Term> left, std::vector<Term> right) {
    Witness w;
    w.check = std::move(check);
    w.kind = kind;
    w.left_terms = std::move(left);
    w.right_terms = std::move(right);
    for (const Term& term : w.left_terms) w.lhs += term.weight * scalar_witness_value(m, kind, term.arg);
    for (const Term& term : w.right_terms) w.rhs += term.weight * scalar_witness_value(m, kind, term.arg);
    return w;
}

/// Recompute (lhs, rhs) of a witness from scratch.
inline std::pair<double, double> reevaluate(const Model& m, const Witness& w) {
    if (w.kind == WitnessKind::lotteries) {
        const Lottery l = make_lottery(w.left);
        const Lottery r = make_lottery(w.right);
        return {eval_lottery(m, l), eval_lottery(m, r)};
    }
    double lhs = 0.0, rhs = 0.0;
    for (const Term& term : w.left_terms) lhs += term.weight * scalar_witness_value(m, w.kind, term.arg);
    for (const Term& term : w.right_terms) rhs += term.weight * scalar_witness_value(m, w.kind, term.arg);
    return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// Representation conditions for phi(D(t) v(x))

struct RepresentationReport {
    Verdict curvature_convexity;  // phi o exp convex on ln Range(D v)
    Verdict discount_decreasing;  // D > 0 strictly decreasing
    Verdict value_increasing;     // v > 0 strictly increasing
    Verdict time_concavity;       // t -> phi(D(t) v(x)) concave for each x

    bool all_hold() const {
        return curvature_convexity.holds() && discount_decreasing.holds() &&
               value_increasing.holds() && time_concavity.holds();
    }
};

namespace detail {

struct GridIndex {
    std::size_t i = 0;
    std::size_t j = 0;
};

}  // namespace detail

/// Concavity of u(x, .) through second differences at interior grid times.
/// Instance margin: u(x, t_j) - (u(x, t_{j-1}) + u(x, t_{j+1})) / 2. With
/// `convex` the sign is flipped.
inline std::pair<Verdict, InstanceCounts> time_curvature_check(const Model& m, const Tolerances& tol,
                                                               bool convex, std::string check) {
    const Domain& dom = domain_of(m);
    const auto xs = linspace(dom.x(), tol.grid_n);
    const auto ts = linspace(dom.t(), tol.grid_n);
    MarginTracker<detail::GridIndex> tracker(tol.eq_tol, tol.strict_margin);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<double> u(ts.size());
        for (std::size_t j = 0; j < ts.size(); ++j) u[j] = atom_utility(m, {xs[i], ts[j]});
        for (std::size_t j = 1; j + 1 < ts.size(); ++j) {
            const UtilityAtom bin[2] = {{u[j - 1], 0.5}, {u[j + 1], 0.5}};
            const UtilityAtom mid{u[j], 1.0};
            const double margin =
                aggregate(m, std::span<const UtilityAtom>(&mid, 1)) - aggregate(m, bin);
            tracker.add(convex ? -margin : margin, {i, j});
        }
    }
    auto make = [&](const detail::GridIndex& k) {
        const Lottery point = degenerate({xs[k.i], ts[k.j]});
        const Lottery spread = half_half({xs[k.i], ts[k.j - 1]}, {xs[k.i], ts[k.j + 1]});
        return convex ? lottery_witness(m, check, spread, point)
                      : lottery_witness(m, check, point, spread);
    };
    return {tracker.universal(make, "no interior grid times"), tracker.counts()};
}

inline RepresentationReport check_representation_conditions(const MultiplicativeEU& eu,
                                                            const Tolerances& tol) {
    const Model m = eu;
    const Domain& dom = eu.domain();
    const auto xs = linspace(dom.x(), tol.grid_n);
    const auto ts = linspace(dom.t(), tol.grid_n);
    const double scale = utility_scale(m, tol.grid_n);
    const double eq_rel = tol.eq_tol / scale;
    const double strict_rel = tol.strict_margin / scale;
    RepresentationReport rep;

    // (1) phi o exp convex on ln Range(D v)
    {
        double y_lo = std::numeric_limits<double>::infinity();
        double y_hi = -y_lo;
        for (double x : xs)
            for (double t : ts) {
                const double y = eu.discount_at(t) * eu.value_at(x);
                y_lo = std::min(y_lo, y);
                y_hi = std::max(y_hi, y);
            }
        const auto zs = linspace(std::log(y_lo), std::log(y_hi), tol.grid_n);
        MarginTracker<std::size_t> tracker(tol.eq_tol, tol.strict_margin);
        for (std::size_t k = 1; k + 1 < zs.size(); ++k) {
            const double g0 = eu.curvature_of_exp_at(zs[k - 1]);
            const double g1 = eu.curvature_of_exp_at(zs[k]);
            const double g2 = eu.curvature_of_exp_at(zs[k + 1]);
            tracker.add(0.5 * g0 + 0.5 * g2 - g1, k);
        }
        rep.curvature_convexity = tracker.universal(
            [&](std::size_t k) {
                return scalar_witness(m, "curvature_convexity", WitnessKind::curvature_of_exp,
                                      {{zs[k - 1], 0.5}, {zs[k + 1], 0.5}}, {{zs[k], 1.0}});
            },
            "degenerate Range(D v)");
    }

    // (2) D strictly decreasing, margins relative to max D
    {
        double dmax = 0.0;
        for (double t : ts) dmax = std::max(dmax, eu.discount_at(t));
        MarginTracker<std::size_t> tracker(eq_rel, strict_rel);
        for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
            if (ts[j] == ts[j + 1]) continue;
            tracker.add((eu.discount_at(ts[j]) - eu.discount_at(ts[j + 1])) / dmax, j);
        }
        rep.discount_decreasing = tracker.universal(
            [&](std::size_t j) {
                return scalar_witness(m, "discount_decreasing", WitnessKind::discount,
                                      {{ts[j], 1.0}}, {{ts[j + 1], 1.0}});
            },
            "degenerate time grid");
        if (!(eu.discount_at(dom.t().hi) > 0.0))
            rep.discount_decreasing.reason = "D is not positive on T";
    }

    // (3) v strictly increasing, margins relative to max v
    {
        double vmax = 0.0;
        for (double x : xs) vmax = std::max(vmax, eu.value_at(x));
        MarginTracker<std::size_t> tracker(eq_rel, strict_rel);
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            if (xs[i] == xs[i + 1]) continue;
            tracker.add((eu.value_at(xs[i + 1]) - eu.value_at(xs[i])) / vmax, i);
        }
        rep.value_increasing = tracker.universal(
            [&](std::size_t i) {
                return scalar_witness(m, "value_increasing", WitnessKind::value, {{xs[i + 1], 1.0}},
                                      {{xs[i], 1.0}});
            },
            "degenerate prize grid");
    }

    // (4) t -> phi(D(t) v(x)) concave for each grid x
    rep.time_concavity = time_curvature_check(m, tol, false, "time_concavity").first;
    return rep;
}

}  // namespace timelot
