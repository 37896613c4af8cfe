#pragma once

#include <utility>
#include <vector>

#include "meanext/means.hpp"

namespace meanext {

struct SymTrace {
    // (a_k, b_k) per step, starting with the normalized inputs; capped at 64.
    std::vector<std::pair<double, double>> pairs;
    double limit = 0.0;
    long iterations = 0;
};

// Symmetrizes a 2-variable mean by iterating
//   a_{k+1} = min{a∘b, b∘a},  b_{k+1} = max{a∘b, b∘a}
// until b_k - a_k <= tol. Inputs are normalized to a <= b on entry, so the
// result is symmetric by construction. Throws NonConvergence at max_iter.
SymTrace symmetrize(const MeanSpec& mean, double a, double b, double tol = 1e-12,
                    long max_iter = 1'000'000);

}  // namespace meanext
