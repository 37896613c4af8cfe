#include "meanext/symmetrize.hpp"

#include <algorithm>
#include <array>

namespace meanext {

SymTrace symmetrize(const MeanSpec& mean, double a, double b, double tol, long max_iter) {
    if (mean.arity() != 2) throw ArityMismatch("symmetrize requires a 2-variable mean");
    if (!domain_contains(mean.domain(), a) || !domain_contains(mean.domain(), b)) {
        throw DomainViolation("symmetrize inputs outside the mean's domain");
    }
    if (a > b) std::swap(a, b);

    SymTrace trace;
    trace.pairs.emplace_back(a, b);
    long k = 0;
    while (b - a > tol && k < max_iter) {
        double ab = eval_mean(mean, std::array{a, b});
        double ba = eval_mean(mean, std::array{b, a});
        a = std::min(ab, ba);
        b = std::max(ab, ba);
        ++k;
        if (trace.pairs.size() < 64) trace.pairs.emplace_back(a, b);
    }
    if (b - a > tol) {
        throw NonConvergence("symmetrization gap " + std::to_string(b - a) +
                             " above tolerance after " + std::to_string(k) + " iterations");
    }
    trace.limit = (a + b) / 2.0;
    trace.iterations = k;
    return trace;
}

}  // namespace meanext
