#include <gtest/gtest.h>

#include "support.hpp"

using namespace timelot;
using namespace timelot::testing;

namespace {

VerdictKind kind(const AuditReport& r, Axiom a) { return r.verdict(a).kind; }

constexpr auto strict = VerdictKind::holds_strictly;
constexpr auto violated = VerdictKind::violated;

}  // namespace

TEST(Instances, PowerExpQuadruple) {
    const Model m = power_exp();
    const double margin = si_margin(m, 2, 1, 1, 2);
    EXPECT_NEAR(margin, 0.015194988306596269, 1e-12);
    const double unhalved =
        eval_outcome(m, {2, 1}) + eval_outcome(m, {1, 2}) - eval_outcome(m, {2, 2}) - eval_outcome(m, {1, 1});
    EXPECT_NEAR(unhalved, 0.030389976613192538, 1e-12);
}

TEST(Instances, PowerExpMidpointFavoursSureTime) {
    const Model m = power_exp();
    EXPECT_NEAR(weak_ratl_margin(m, 1, 1, 3), -1.0672567455893842 + 1.1099827044906332, 1e-12);
}

TEST(Instances, EduMidpointFavoursSpread) {
    EXPECT_LT(weak_ratl_margin(edu(), 100, 1, 9), 0.0);
}

TEST(Audit, EduVerdicts) {
    const AuditReport r = audit(edu());
    EXPECT_EQ(kind(r, Axiom::outcome_monotonicity), strict);
    EXPECT_EQ(kind(r, Axiom::impatience), strict);
    EXPECT_EQ(kind(r, Axiom::stochastic_impatience), strict);
    EXPECT_EQ(kind(r, Axiom::ratl), violated);
    EXPECT_EQ(kind(r, Axiom::weak_ratl), violated);
    EXPECT_EQ(kind(r, Axiom::rstl), strict);
    EXPECT_EQ(kind(r, Axiom::weak_rstl), strict);
    EXPECT_EQ(kind(r, Axiom::no_future_bias), VerdictKind::holds_weakly);
    EXPECT_EQ(kind(r, Axiom::wci), strict);
    EXPECT_EQ(kind(r, Axiom::double_cancellation), strict);
    EXPECT_TRUE(r.any_target_violated());
}

TEST(Audit, PowerExpVerdicts) {
    const AuditReport r = audit(power_exp());
    for (Axiom a : all_axioms) {
        if (is_target_axiom(a)) {
            EXPECT_EQ(kind(r, a), strict) << axiom_name(a);
        }
    }
    EXPECT_EQ(kind(r, Axiom::no_future_bias), violated);
    EXPECT_EQ(kind(r, Axiom::future_bias), strict);
    EXPECT_FALSE(r.any_target_violated());
}

TEST(Audit, ExpCubicIsFutureBiasedYetNotRatl) {
    // D'' = ((1 + t^2)^2 - 2t) D > 0, so D is convex throughout.
    const AuditReport r = audit(exp_cubic());
    EXPECT_EQ(kind(r, Axiom::stochastic_impatience), strict);
    EXPECT_EQ(kind(r, Axiom::future_bias), strict);
    EXPECT_EQ(kind(r, Axiom::ratl), violated);
    EXPECT_EQ(kind(r, Axiom::weak_ratl), violated);
    EXPECT_EQ(kind(r, Axiom::rstl), strict);
}

TEST(Audit, HyperbolicIsNotFutureBiased) {
    const Model m = hyperbolic();
    const auto fb = check_future_bias(m, FutureBiasMode::separable_logconvexity, scaled_tolerances(m));
    EXPECT_EQ(fb.averse.verdict.kind, strict);
    EXPECT_TRUE(fb.seeking.verdict.violated());
}

TEST(Audit, ShiftModeAgreesWithSeparable) {
    for (const Model& m : {Model(hyperbolic()), Model(power_exp())}) {
        Tolerances tol = scaled_tolerances(m);
        tol.sample_n = 300;
        const auto a = check_future_bias(m, FutureBiasMode::separable_logconvexity, tol);
        const auto b = check_future_bias(m, FutureBiasMode::indifference_shift, tol);
        EXPECT_EQ(a.averse.verdict.holds(), b.averse.verdict.holds()) << describe(m);
        EXPECT_EQ(a.seeking.verdict.holds(), b.seeking.verdict.holds()) << describe(m);
    }
}

TEST(Audit, GlbuModes) {
    const Model g = glbu(0.3);
    const Tolerances tol = scaled_tolerances(g);
    try {
        check_stochastic_impatience(g, SiMode::mixed_partial, tol);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::mode_unsupported);
    }
    EXPECT_THROW(check_ratl(g, RatlMode::concavity, tol), Error);
    const auto j = check_ratl(g, RatlMode::jensen_sampled, tol);
    EXPECT_EQ(j.averse.verdict.kind, VerdictKind::not_applicable);

    const AuditReport r = audit(g);
    EXPECT_EQ(kind(r, Axiom::ratl), VerdictKind::not_applicable);
    EXPECT_EQ(kind(r, Axiom::stochastic_impatience), violated);
    EXPECT_EQ(kind(r, Axiom::weak_ratl), strict);
}

TEST(Audit, SiModesAgreeOnCatalog) {
    Tolerances base;
    base.grid_n = 21;
    for (const MultiplicativeEU& eu : catalog()) {
        const Model m = eu;
        const Tolerances tol = scaled_tolerances(m, base);
        const auto four = check_stochastic_impatience(m, SiMode::fourpoint, tol).verdict;
        const auto deriv = check_stochastic_impatience(m, SiMode::mixed_partial, tol).verdict;
        EXPECT_EQ(four.violated(), deriv.violated()) << describe(m);
        const auto conc = check_ratl(m, RatlMode::concavity, tol).averse.verdict;
        const auto mid = check_ratl(m, RatlMode::midpoint, tol).averse.verdict;
        EXPECT_EQ(conc.violated(), mid.violated()) << describe(m);
    }
}

TEST(Witnesses, ReevaluateToStoredValues) {
    const Model m = edu();
    const AuditReport r = audit(m);
    for (Axiom a : {Axiom::ratl, Axiom::weak_ratl}) {
        const Verdict& v = r.verdict(a);
        ASSERT_TRUE(v.witness.has_value()) << axiom_name(a);
        const auto [l, rr] = reevaluate(m, *v.witness);
        EXPECT_NEAR(l, v.witness->lhs, 1e-12 * std::max(1.0, std::abs(l)));
        EXPECT_NEAR(rr, v.witness->rhs, 1e-12 * std::max(1.0, std::abs(rr)));
        EXPECT_LT(l - rr, 0.0);
    }
}

TEST(Determinism, SameSeedSameReport) {
    const Model m = power_exp();
    EXPECT_EQ(audit(m), audit(m));
    Tolerances other = scaled_tolerances(m);
    other.seed = 7;
    const AuditReport r = audit(m, other);
    EXPECT_EQ(kind(r, Axiom::wci), strict);
    EXPECT_EQ(kind(r, Axiom::double_cancellation), strict);
}

TEST(GridRefinement, ViolationsPersist) {
    const Model m = edu();
    for (std::size_t n : {21u, 41u, 81u}) {
        Tolerances base;
        base.grid_n = n;
        const AuditReport r = audit(m, scaled_tolerances(m, base));
        EXPECT_TRUE(r.verdict(Axiom::weak_ratl).violated()) << n;
        EXPECT_TRUE(r.verdict(Axiom::ratl).violated()) << n;
    }
}

TEST(AxiomNames, RoundTrip) {
    for (Axiom a : all_axioms) EXPECT_EQ(axiom_from_name(axiom_name(a)), a);
    EXPECT_FALSE(axiom_from_name("nope").has_value());
}
