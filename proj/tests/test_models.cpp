#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace timelot;
using namespace timelot::testing;

TEST(Eval, EduDegenerate) {
    const Model m = edu();
    EXPECT_NEAR(eval_outcome(m, {100, 6}), 53.1441, 1e-12);
    EXPECT_DOUBLE_EQ(eval_outcome(m, {37.5, 0}), 37.5);
}

TEST(Eval, PowerExpPoint) {
    // -(-ln 0.9 - ln 0.5)^0.6
    const Model m = power_exp();
    EXPECT_NEAR(eval_outcome(m, {1, 1}), -0.8737103165885772, 1e-12);
    EXPECT_NEAR(eval_outcome(m, {1, 1}), -std::pow(-std::log(0.9) - std::log(0.5), 0.6), 1e-15);
}

TEST(Eval, HalfHalfLotteries) {
    const Domain wide({1.0, 100.0}, {0.0, 11.0});
    const Lottery p = half_half({100, 1}, {100, 11});
    EXPECT_NEAR(eval_lottery(edu(0.9, wide), p), 60.6905298045, 1e-9);
    EXPECT_NEAR(eval_lottery(glbu(0.4), p), 54.82863576540001, 1e-9);
    EXPECT_NEAR(eval_lottery(glbu(0.3), p), 48.9667417263, 1e-9);
}

TEST(Eval, GlbuShapesAndSymmetry) {
    const Model g = glbu(0.3);
    EXPECT_DOUBLE_EQ(eval_lottery(g, half_half({20, 1}, {80, 7})), eval_lottery(g, half_half({80, 7}, {20, 1})));
    EXPECT_DOUBLE_EQ(eval_lottery(g, degenerate({50, 2})), 50 * std::pow(0.9, 2));
    try {
        eval_lottery(g, make_lottery({{{10, 1}, 0.25}, {{20, 1}, 0.75}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::unsupported_lottery_shape);
    }
}

TEST(Eval, DisappointmentDegenerateAndNonEu) {
    const SeparableUtility base{ExponentialDiscount{0.9}, IdentityValue{}};
    const Model d = Disappointment(base, ExpGain{0.5, 0.05}, MeanReference{}, edu_domain());
    EXPECT_DOUBLE_EQ(eval_outcome(d, {40, 3}), 40 * std::pow(0.9, 3));
    // exp gain is not odd, so a binary departs from expected utility.
    const Lottery p = half_half({10, 1}, {90, 1});
    const double eu = 0.5 * (9.0 + 81.0);
    EXPECT_GT(std::abs(eval_lottery(d, p) - eu), 1e-3);
    // Constant reference: degenerate carries R(u - u_bar).
    const Model c = Disappointment(base, ExpGain{0.5, 0.05}, ConstantReference{10.0}, edu_domain());
    const double u = 40 * std::pow(0.9, 3);
    EXPECT_NEAR(eval_outcome(c, {40, 3}), u + 0.5 * std::expm1(0.05 * (u - 10.0)), 1e-12);
}

TEST(Eval, EuLinearity) {
    const Model m = power_exp();
    const Lottery p = make_lottery({{{1, 1}, 0.3}, {{5, 2}, 0.7}});
    const Lottery q = make_lottery({{{2, 4}, 0.6}, {{9, 0.5}, 0.4}});
    const double lhs = eval_lottery(m, mix(p, q, 0.35));
    const double rhs = 0.35 * eval_lottery(m, p) + 0.65 * eval_lottery(m, q);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(rhs));
}

TEST(Eval, OutOfDomain) {
    try {
        eval_outcome(edu(), {100, 11});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::out_of_domain);
    }
}

TEST(Validation, ParameterConstraints) {
    auto code = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return std::pair{e.code(), std::string(e.what())};
        }
        return std::pair{Errc::invalid_argument, std::string("none")};
    };
    auto [c1, m1] = code([] {
        MultiplicativeEU(NegNegLogPowCurvature{0.4}, PowerExponentDiscount{0.9, 2}, BoundedRatioValue{1},
                         power_exp_domain());
    });
    EXPECT_EQ(c1, Errc::validation);
    EXPECT_NE(m1.find("b must lie in (1/a, 1)"), std::string::npos);
    auto [c2, m2] = code([] { edu(1.2); });
    EXPECT_EQ(c2, Errc::validation);
    EXPECT_NE(m2.find("β must lie in (0,1)"), std::string::npos);
    auto [c3, m3] = code([] {
        MultiplicativeEU(NegNegLogPowCurvature{0.6}, ExponentialDiscount{0.9}, IdentityValue{}, edu_domain());
    });
    EXPECT_EQ(c3, Errc::curvature_domain);
    auto [c4, m4] = code([] { glbu(1.0); });
    EXPECT_EQ(c4, Errc::validation);
    auto [c5, m5] = code([] {
        MultiplicativeEU(IdentityCurvature{}, PowerExponentDiscount{0.9, 0.5}, IdentityValue{}, edu_domain());
    });
    EXPECT_EQ(c5, Errc::validation);
}

TEST(Derivatives, MatchFiniteDifferencesAcrossCatalog) {
    for (const MultiplicativeEU& eu : catalog()) {
        const auto d = compare_derivatives(eu, Tolerances{.grid_n = 11});
        EXPECT_LT(d.max_rel_err_xt, 1e-4) << describe(eu);
        EXPECT_LT(d.max_rel_err_tt, 1e-3) << describe(eu);
    }
}

TEST(Derivatives, EduMixedPartialClosedForm) {
    const MultiplicativeEU m = edu();
    const auto d = m.derivatives(50.0, 3.0);
    EXPECT_NEAR(d.u_xt, std::pow(0.9, 3.0) * std::log(0.9), 1e-14);
    EXPECT_NEAR(d.u_tt, 50.0 * std::pow(0.9, 3.0) * std::log(0.9) * std::log(0.9), 1e-12);
}

TEST(Representation, AdditiveRoundTrip) {
    const MultiplicativeEU m = power_exp();
    const AdditiveForm a = to_additive(m);
    Rng rng(7);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double x = rng.uniform(0.1, 10.0), t = rng.uniform(0.1, 5.0);
        worst = std::max(worst, std::abs(a.utility(x, t) - m.utility(x, t)) / std::abs(m.utility(x, t)));
    }
    EXPECT_LE(worst, 1e-12);
    EXPECT_EQ(to_multiplicative(a), m);
    EXPECT_NEAR(a.discount_star(3.0), 9.0 * std::log(0.9), 1e-14);
    EXPECT_NEAR(to_additive(edu()).discount_star(4.0), 4.0 * std::log(0.9), 1e-14);
}

TEST(Representation, TransformPreservesValues) {
    const MultiplicativeEU m = edu();
    const MultiplicativeEU t = apply_representation_transform(m, 2.0, 0.0, 0.0);
    EXPECT_NEAR(t.discount_at(3.0), std::pow(0.81, 3.0), 1e-14);
    EXPECT_NEAR(t.value_at(7.0), 49.0, 1e-12);
    EXPECT_NEAR(t.curvature_at(49.0), 7.0, 1e-12);
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const Lottery p = make_lottery({{{rng.uniform(1, 100), rng.uniform(0, 10)}, 0.4},
                                        {{rng.uniform(1, 100), rng.uniform(0, 10)}, 0.6}});
        const double v = eval_lottery(Model(m), p);
        EXPECT_NEAR(eval_lottery(Model(t), p), v, 1e-12 * std::abs(v));
    }
    EXPECT_EQ(apply_representation_transform(m, 1.0, 0.0, 0.0).transform(), LogAffine{});
}

TEST(Representation, ConditionsReport) {
    const auto ex = check_representation_conditions(power_exp(), scaled_tolerances(Model(power_exp())));
    EXPECT_TRUE(ex.all_hold());
    const auto e = check_representation_conditions(edu(), scaled_tolerances(Model(edu())));
    EXPECT_TRUE(e.curvature_convexity.holds());
    EXPECT_TRUE(e.discount_decreasing.holds());
    EXPECT_TRUE(e.value_increasing.holds());
    EXPECT_TRUE(e.time_concavity.violated());
    const auto h = check_representation_conditions(hyperbolic(), scaled_tolerances(Model(hyperbolic())));
    EXPECT_TRUE(h.curvature_convexity.holds());
    EXPECT_TRUE(h.time_concavity.violated());
}

TEST(Witness, ReevaluatesExactly) {
    const Model m = edu();
    const Witness w = lottery_witness(m, "x", half_half({100, 1}, {50, 2}), half_half({100, 2}, {50, 1}));
    const auto [l, r] = reevaluate(m, w);
    EXPECT_EQ(l, w.lhs);
    EXPECT_EQ(r, w.rhs);
}

TEST(Scale, ScaledTolerances) {
    const Model m = edu();
    const Tolerances t = scaled_tolerances(m);
    EXPECT_DOUBLE_EQ(utility_scale(m), 100.0);
    EXPECT_DOUBLE_EQ(t.eq_tol, 1e-7);
    EXPECT_DOUBLE_EQ(t.strict_margin, 1e-5);
}
