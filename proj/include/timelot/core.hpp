#pragma once

// Domain primitives: outcomes, simple lotteries over (prize, time), domains,
// tolerances, verdicts and witnesses.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace timelot {

enum class Errc {
    empty_support,
    probability_sum,
    out_of_domain,
    domain_mismatch,
    not_a_time_lottery,
    curvature_domain,
    unsupported_lottery_shape,
    non_positive_component,
    mode_unsupported,
    non_monotone_evaluation,
    max_iter_exceeded,
    unbracketed,
    validation,
    parse,
    hypothesis_failed,
    invalid_argument,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::empty_support: return "EmptySupport";
        case Errc::probability_sum: return "ProbabilitySumError";
        case Errc::out_of_domain: return "OutOfDomain";
        case Errc::domain_mismatch: return "DomainMismatch";
        case Errc::not_a_time_lottery: return "NotATimeLottery";
        case Errc::curvature_domain: return "CurvatureDomainError";
        case Errc::unsupported_lottery_shape: return "UnsupportedLotteryShape";
        case Errc::non_positive_component: return "NonPositiveComponent";
        case Errc::mode_unsupported: return "ModeUnsupported";
        case Errc::non_monotone_evaluation: return "NonMonotoneEvaluation";
        case Errc::max_iter_exceeded: return "MaxIterExceeded";
        case Errc::unbracketed: return "Unbracketed";
        case Errc::validation: return "ValidationError";
        case Errc::parse: return "ParseError";
        case Errc::hypothesis_failed: return "HypothesisFailed";
        case Errc::invalid_argument: return "InvalidArgument";
    }
    return "Error";
}

/// Every failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

struct Outcome {
    double x = 0.0;  // prize
    double t = 0.0;  // delivery time

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double v) const { return v >= lo && v <= hi; }
    bool interior(double v) const { return v > lo && v < hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Compact window X x T on which every check is certified.
class Domain {
public:
    Domain(Interval x, Interval t) : x_(x), t_(t) {
        if (!std::isfinite(x.lo) || !std::isfinite(x.hi) || !std::isfinite(t.lo) ||
            !std::isfinite(t.hi))
            throw Error(Errc::validation, "domain bounds must be finite");
        if (!(x.lo > 0.0)) throw Error(Errc::validation, "prize interval must satisfy x_lo > 0");
        if (!(x.lo < x.hi)) throw Error(Errc::validation, "prize interval must satisfy x_lo < x_hi");
        if (!(t.lo >= 0.0)) throw Error(Errc::validation, "time interval must satisfy t_lo >= 0");
        if (!(t.lo < t.hi)) throw Error(Errc::validation, "time interval must satisfy t_lo < t_hi");
    }

    const Interval& x() const { return x_; }
    const Interval& t() const { return t_; }

    bool contains(const Outcome& o) const { return x_.contains(o.x) && t_.contains(o.t); }
    bool interior(const Outcome& o) const { return x_.interior(o.x) && t_.interior(o.t); }

    friend bool operator==(const Domain&, const Domain&) = default;

private:
    Interval x_;
    Interval t_;
};

/// n equally spaced points covering [lo, hi]; the last point is exactly hi.
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

inline std::vector<double> linspace(const Interval& iv, std::size_t n) {
    return linspace(iv.lo, iv.hi, n);
}

struct Atom {
    Outcome outcome;
    double p = 0.0;

    friend bool operator==(const Atom&, const Atom&) = default;
};

namespace detail {

// 12 significant digits; used only as the equality key for merging atoms.
inline double canonical_key(double v) {
    if (v == 0.0) return 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return std::strtod(buf, nullptr);
}

inline constexpr double probability_sum_tol = 1e-12;

}  // namespace detail

/// Simple lottery on X x T: finite support, strictly positive probabilities
/// summing to one, atoms ordered by (t, x).
class Lottery {
public:
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::optional<Domain>& domain() const { return domain_; }
    std::size_t size() const { return atoms_.size(); }
    bool is_degenerate() const { return atoms_.size() == 1; }

    friend bool operator==(const Lottery&, const Lottery&) = default;

    friend Lottery make_lottery(std::span<const Atom> entries, std::optional<Domain> domain);

private:
    Lottery() = default;

    std::vector<Atom> atoms_;
    std::optional<Domain> domain_;
};

inline Lottery make_lottery(std::span<const Atom> entries,
                            std::optional<Domain> domain = std::nullopt) {
    if (entries.empty()) throw Error(Errc::empty_support, "lottery needs at least one atom");

    struct Keyed {
        double kt, kx;
        Atom atom;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(entries.size());
    for (const Atom& a : entries) {
        if (!std::isfinite(a.outcome.x) || !std::isfinite(a.outcome.t) || !std::isfinite(a.p))
            throw Error(Errc::invalid_argument, "lottery entries must be finite");
        if (!(a.p > 0.0) || a.p > 1.0 + detail::probability_sum_tol)
            throw Error(Errc::probability_sum, "atom probabilities must lie in (0, 1]");
        if (domain && !domain->contains(a.outcome))
            throw Error(Errc::out_of_domain, "atom (" + std::to_string(a.outcome.x) + ", " +
                                                 std::to_string(a.outcome.t) +
                                                 ") lies outside the domain");
        keyed.push_back({detail::canonical_key(a.outcome.t), detail::canonical_key(a.outcome.x), a});
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& l, const Keyed& r) {
        return l.kt != r.kt ? l.kt < r.kt : l.kx < r.kx;
    });

    Lottery out;
    out.domain_ = std::move(domain);
    double sum = 0.0;
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        if (i > 0 && keyed[i].kt == keyed[i - 1].kt && keyed[i].kx == keyed[i - 1].kx) {
            out.atoms_.back().p += keyed[i].atom.p;
        } else {
            out.atoms_.push_back(keyed[i].atom);
        }
        sum += keyed[i].atom.p;
    }
    if (std::abs(sum - 1.0) > detail::probability_sum_tol)
        throw Error(Errc::probability_sum,
                    "probabilities sum to " + std::to_string(sum) + ", expected 1");
    return out;
}

inline Lottery make_lottery(std::initializer_list<Atom> entries,
                            std::optional<Domain> domain = std::nullopt) {
    return make_lottery(std::span<const Atom>(entries.begin(), entries.size()), std::move(domain));
}

inline Lottery degenerate(Outcome o, std::optional<Domain> domain = std::nullopt) {
    return make_lottery({Atom{o, 1.0}}, std::move(domain));
}

inline Lottery half_half(Outcome a, Outcome b, std::optional<Domain> domain = std::nullopt) {
    return make_lottery({Atom{a, 0.5}, Atom{b, 0.5}}, std::move(domain));
}

/// lambda * p + (1 - lambda) * q.
inline Lottery mix(const Lottery& p, const Lottery& q, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw Error(Errc::invalid_argument, "mixture weight must lie in [0, 1]");
    if (p.domain() != q.domain())
        throw Error(Errc::domain_mismatch, "mixed lotteries must share a domain");
    std::vector<Atom> atoms;
    atoms.reserve(p.size() + q.size());
    for (const Atom& a : p.atoms())
        if (lambda * a.p > 0.0) atoms.push_back({a.outcome, lambda * a.p});
    for (const Atom& a : q.atoms())
        if ((1.0 - lambda) * a.p > 0.0) atoms.push_back({a.outcome, (1.0 - lambda) * a.p});
    return make_lottery(atoms, p.domain());
}

inline bool is_time_lottery(const Lottery& p) {
    const double x0 = detail::canonical_key(p.atoms().front().outcome.x);
    return std::all_of(p.atoms().begin(), p.atoms().end(),
                       [&](const Atom& a) { return detail::canonical_key(a.outcome.x) == x0; });
}

/// Expected arrival time of a time lottery.
inline double expected_time(const Lottery& p) {
    if (!is_time_lottery(p))
        throw Error(Errc::not_a_time_lottery, "lottery mixes more than one prize");
    double s = 0.0;
    for (const Atom& a : p.atoms()) s += a.outcome.t * a.p;
    return s;
}

/// Numerical settings shared by every check. eq_tol and strict_margin are in
/// utility units; see scaled_tolerances() in models.hpp for scale-aware defaults.
struct Tolerances {
    double eq_tol = 1e-9;
    double strict_margin = 1e-7;
    double fd_step_frac = 1e-4;
    double bisect_tol = 1e-10;  // fraction of the searched axis length
    std::size_t grid_n = 41;
    std::size_t sample_n = 2000;
    std::uint64_t seed = 42;

    void validate() const {
        if (!(eq_tol > 0.0)) throw Error(Errc::validation, "eq_tol must be positive");
        if (!(strict_margin > 0.0)) throw Error(Errc::validation, "strict_margin must be positive");
        if (!(fd_step_frac > 0.0 && fd_step_frac < 0.01))
            throw Error(Errc::validation, "fd_step_frac must lie in (0, 0.01)");
        if (!(bisect_tol > 0.0)) throw Error(Errc::validation, "bisect_tol must be positive");
        if (grid_n < 3) throw Error(Errc::validation, "grid_n must be at least 3");
        if (sample_n == 0) throw Error(Errc::validation, "sample_n must be positive");
    }

    friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

enum class WitnessKind {
    lotteries,         // lhs = V(left), rhs = V(right)
    log_discount,      // lhs = sum w * ln D(arg)
    discount,          // lhs = sum w * D(arg)
    value,             // lhs = sum w * v(arg)
    curvature_of_exp,  // lhs = sum w * phi(exp(arg))
};

inline const char* witness_kind_name(WitnessKind k) {
    switch (k) {
        case WitnessKind::lotteries: return "lotteries";
        case WitnessKind::log_discount: return "log_discount";
        case WitnessKind::discount: return "discount";
        case WitnessKind::value: return "value";
        case WitnessKind::curvature_of_exp: return "curvature_of_exp";
    }
    return "?";
}

struct Term {
    double arg = 0.0;
    double weight = 0.0;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Counterexample data. The check asserted lhs >= rhs and it failed (or, for
/// an existential property, never held strictly).
struct Witness {
    std::string check;
    WitnessKind kind = WitnessKind::lotteries;
    std::vector<Atom> left;  // lottery atoms, kind == lotteries
    std::vector<Atom> right;
    std::vector<Term> left_terms;  // scalar kinds
    std::vector<Term> right_terms;
    double lhs = 0.0;
    double rhs = 0.0;

    friend bool operator==(const Witness&, const Witness&) = default;
};

enum class VerdictKind { holds_strictly, holds_weakly, violated, not_applicable };

inline const char* verdict_kind_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::holds_strictly: return "holds_strictly";
        case VerdictKind::holds_weakly: return "holds_weakly";
        case VerdictKind::violated: return "violated";
        case VerdictKind::not_applicable: return "not_applicable";
    }
    return "?";
}

/// Grid/sample-resolution statement: "no violation found" or "violation with
/// a reproducible witness". Never a claim about the continuum.
struct Verdict {
    VerdictKind kind = VerdictKind::not_applicable;
    std::optional<double> min_margin;
    std::optional<Witness> witness;
    std::string reason;

    bool holds() const {
        return kind == VerdictKind::holds_strictly || kind == VerdictKind::holds_weakly;
    }
    bool strict() const { return kind == VerdictKind::holds_strictly; }
    bool violated() const { return kind == VerdictKind::violated; }

    static Verdict holds_strictly(double margin) {
        return {VerdictKind::holds_strictly, margin, std::nullopt, {}};
    }
    static Verdict holds_weakly(double margin) {
        return {VerdictKind::holds_weakly, margin, std::nullopt, {}};
    }
    static Verdict violated_by(Witness w, double margin, std::string reason = {}) {
        return {VerdictKind::violated, margin, std::move(w), std::move(reason)};
    }
    static Verdict not_applicable(std::string reason) {
        return {VerdictKind::not_applicable, std::nullopt, std::nullopt, std::move(reason)};
    }

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct InstanceCounts {
    std::size_t strict = 0;
    std::size_t weak = 0;
    std::size_t violated = 0;

    std::size_t total() const { return strict + weak + violated; }

    friend bool operator==(const InstanceCounts&, const InstanceCounts&) = default;
};

/// Accumulates instance margins (lhs - rhs) for a universal property and
/// remembers the worst instance so a witness can be built for it afterwards.
template <typename Key>
class MarginTracker {
public:
    MarginTracker(double eq_tol, double strict_margin) : eq_(eq_tol), strict_(strict_margin) {}

    void add(double margin, const Key& key) {
        if (margin >= strict_) {
            ++counts_.strict;
        } else if (margin >= -eq_) {
            ++counts_.weak;
        } else {
            ++counts_.violated;
        }
        if (!worst_ || margin < worst_margin_) {
            worst_ = key;
            worst_margin_ = margin;
        }
        if (!best_ || margin > best_margin_) {
            best_ = key;
            best_margin_ = margin;
        }
    }

    const InstanceCounts& counts() const { return counts_; }
    bool empty() const { return !worst_.has_value(); }
    double worst_margin() const { return worst_margin_; }
    const Key& worst() const { return *worst_; }
    double best_margin() const { return best_margin_; }
    const Key& best() const { return *best_; }

    /// Universal reading: every instance must satisfy margin >= -eq_tol.
    template <typename MakeWitness>
    Verdict universal(MakeWitness&& make_witness, std::string_view no_instances) const {
        if (empty()) return Verdict::not_applicable(std::string(no_instances));
        if (counts_.violated > 0) return Verdict::violated_by(make_witness(*worst_), worst_margin_);
        if (worst_margin_ >= strict_) return Verdict::holds_strictly(worst_margin_);
        return Verdict::holds_weakly(worst_margin_);
    }

    /// Existential reading (e.g. Future Bias): the property is exhibited when
    /// at least one instance is strict; strictly everywhere when all are.
    template <typename MakeWitness>
    Verdict existential(MakeWitness&& make_witness, std::string_view no_instances) const {
        if (empty()) return Verdict::not_applicable(std::string(no_instances));
        if (counts_.strict == 0)
            return Verdict::violated_by(make_witness(*worst_), worst_margin_,
                                        "no strict instance found");
        if (counts_.strict == counts_.total()) return Verdict::holds_strictly(worst_margin_);
        return Verdict::holds_weakly(worst_margin_);
    }

private:
    double eq_;
    double strict_;
    InstanceCounts counts_;
    std::optional<Key> worst_;
    double worst_margin_ = 0.0;
    std::optional<Key> best_;
    double best_margin_ = 0.0;
};

// Deterministic random streams. The generator and the uniform mapping are
// fixed here so that seeded runs are identical across standard libraries.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// xoshiro256** seeded through splitmix64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    /// Independent stream for a named consumer, derived from a base seed.
    static Rng stream(std::uint64_t seed, std::string_view name) {
        std::uint64_t mixed = seed ^ fnv1a(name);
        return Rng(splitmix64(mixed));
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform on the open interval (lo, hi).
    double uniform_open(double lo, double hi) {
        for (;;) {
            const double u = uniform(lo, hi);
            if (u > lo && u < hi) return u;
        }
    }

    /// Integer in [lo, hi].
    std::size_t integer(std::size_t lo, std::size_t hi) {
        return lo + static_cast<std::size_t>(uniform() * static_cast<double>(hi - lo + 1));
    }

    /// Uniform point of the probability simplex with n vertices.
    std::vector<double> simplex(std::size_t n) {
        std::vector<double> w(n);
        double s = 0.0;
        for (auto& wi : w) {
            wi = -std::log1p(-uniform());
            if (wi <= 0.0) wi = std::numeric_limits<double>::min();
            s += wi;
        }
        for (auto& wi : w) wi /= s;
        return w;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

}  // namespace timelot
