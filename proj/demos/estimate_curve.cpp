// Fit synthetic timing curves against the complexity lattice and show
// how the reward would gate on the resulting relation.
#include <iostream>

#include "codejudge/complexity.hpp"
#include "codejudge/reward.hpp"

using namespace codejudge;

int main() {
    std::vector<std::int64_t> sizes;
    for (int k = 8; k <= 17; ++k) sizes.push_back(std::int64_t{1} << k);

    for (ComplexityClass cls : {ComplexityClass::CN, ComplexityClass::CNLOGN,
                                ComplexityClass::CN2}) {
        TimingCurve curve;
        for (std::int64_t n : sizes)
            curve.points.push_back(
                {n, 0.003 * detail::class_growth(cls, static_cast<double>(n))});

        ComplexityVerdict verdict = estimate_class(curve);
        verdict.relation = relation_to_reference(verdict.estimated, ComplexityClass::CN);

        RewardConfig rc;
        std::cout << "true " << class_token(cls) << " -> estimated "
                  << class_token(verdict.estimated)
                  << (verdict.confident ? " (confident)" : "") << ", vs O(n) reference "
                  << relation_name(verdict.relation->kind) << ", time reward "
                  << time_reward(verdict, rc) << "\n";
    }
    return 0;
}
