// Audits every constructible phi x D x v combination on one domain and prints
// a compact verdict table. Usage: timelot_sample [grid_n]

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include "timelot/axioms.hpp"

using namespace timelot;

int main(int argc, char** argv) {
    Tolerances base;
    base.grid_n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 21;
    base.sample_n = 500;
    const Domain dom({0.1, 10.0}, {0.1, 5.0});

    const CurvatureSpec phis[] = {IdentityCurvature{}, PowerCurvature{0.5}, NegNegLogPowCurvature{0.6}};
    const DiscountSpec discounts[] = {ExponentialDiscount{0.9}, HyperbolicDiscount{1.0},
                                      QuasiHyperbolicDiscount{1.0, 0.5}, PowerExponentDiscount{0.9, 2.0},
                                      ExpCubicDiscount{}};
    const ValueSpec values[] = {IdentityValue{}, PowerValue{0.5}, BoundedRatioValue{1.0}};

    // one letter per axiom in audit order: S strict, w weak, x violated, - n/a
    for (Axiom a : all_axioms) std::printf(" %.2s", axiom_name(a));
    std::printf("  model\n");
    for (const auto& phi : phis)
        for (const auto& D : discounts)
            for (const auto& v : values) {
                std::optional<MultiplicativeEU> eu;
                try {
                    eu.emplace(phi, D, v, dom);
                } catch (const Error&) {
                    continue;
                }
                const Model m = *eu;
                const AuditReport r = audit(m, scaled_tolerances(m, base));
                std::string row;
                for (const auto& e : r.entries) {
                    switch (e.result.verdict.kind) {
                        case VerdictKind::holds_strictly: row += "  S"; break;
                        case VerdictKind::holds_weakly: row += "  w"; break;
                        case VerdictKind::violated: row += "  x"; break;
                        case VerdictKind::not_applicable: row += "  -"; break;
                    }
                }
                std::printf("%s  %s\n", row.c_str(), r.model_id.c_str());
            }
}
