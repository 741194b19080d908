#pragma once

#include <vector>

#include "timelot/experiments.hpp"

namespace timelot::testing {

inline Domain edu_domain() { return Domain({1.0, 100.0}, {0.0, 10.0}); }
inline Domain power_exp_domain() { return Domain({0.1, 10.0}, {0.1, 5.0}); }

inline MultiplicativeEU edu(double beta = 0.9, Domain dom = edu_domain()) {
    return MultiplicativeEU(IdentityCurvature{}, ExponentialDiscount{beta}, IdentityValue{}, dom);
}

inline MultiplicativeEU hyperbolic(double k = 1.0, Domain dom = edu_domain()) {
    return MultiplicativeEU(IdentityCurvature{}, HyperbolicDiscount{k}, IdentityValue{}, dom);
}

inline MultiplicativeEU power_exp(Domain dom = power_exp_domain()) {
    return MultiplicativeEU(NegNegLogPowCurvature{0.6}, PowerExponentDiscount{0.9, 2.0},
                            BoundedRatioValue{1.0}, dom);
}

inline MultiplicativeEU exp_cubic(Domain dom = Domain({1.0, 100.0}, {0.0, 2.0})) {
    return MultiplicativeEU(IdentityCurvature{}, ExpCubicDiscount{}, IdentityValue{}, dom);
}

inline Glbu glbu(double pi, Domain dom = Domain({1.0, 100.0}, {0.0, 11.0})) {
    return Glbu(SeparableUtility{ExponentialDiscount{0.9}, IdentityValue{}}, pi, dom);
}

inline std::vector<CurvatureSpec> catalog_phis() {
    return {IdentityCurvature{}, PowerCurvature{0.5}, NegNegLogPowCurvature{0.6}};
}
inline std::vector<DiscountSpec> catalog_discounts() {
    return {ExponentialDiscount{0.9}, HyperbolicDiscount{1.0}, QuasiHyperbolicDiscount{1.0, 0.5},
            PowerExponentDiscount{0.9, 2.0}, ExpCubicDiscount{}};
}
inline std::vector<ValueSpec> catalog_values() {
    return {IdentityValue{}, PowerValue{0.5}, BoundedRatioValue{1.0}};
}

/// Every constructible phi x D x v combination on `dom`.
inline std::vector<MultiplicativeEU> catalog(Domain dom = power_exp_domain()) {
    std::vector<MultiplicativeEU> out;
    for (const auto& p : catalog_phis())
        for (const auto& D : catalog_discounts())
            for (const auto& v : catalog_values()) {
                try {
                    out.emplace_back(p, D, v, dom);
                } catch (const Error&) {
                }
            }
    return out;
}

}  // namespace timelot::testing
