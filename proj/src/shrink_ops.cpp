#include "meanext/shrink_ops.hpp"

#include <cmath>
#include <vector>

namespace meanext {

FixedPointResult leftmost_root(const std::function<double(double)>& g, double a, double b,
                               double tol, int subintervals) {
    if (!(a < b)) throw DomainViolation("leftmost_root requires a < b");
    if (subintervals < 1) throw InvalidDimensions("subintervals must be >= 1");

    double lo = a;
    double glo = g(a);
    double hi = 0.0, ghi = 0.0;
    bool bracketed = false;
    for (int j = 1; j <= subintervals; ++j) {
        double x = a + (b - a) * j / subintervals;
        double gx = g(x);
        if (glo > 0.0 && gx <= 0.0) {
            hi = x;
            ghi = gx;
            bracketed = true;
            break;
        }
        lo = x;
        glo = gx;
    }
    if (!bracketed) {
        throw NoSignChange("no sign change of g over (" + std::to_string(a) + ", " +
                           std::to_string(b) + ") with " + std::to_string(subintervals) +
                           " subintervals");
    }

    // Keep g(lo) > 0 >= g(hi); stop once the bracket is tight AND the
    // residual at the midpoint is below tolerance.
    double mid = 0.5 * (lo + hi);
    double gmid = g(mid);
    for (int iter = 0; iter < 200; ++iter) {
        if (hi - lo <= tol && std::abs(gmid) <= tol * std::max(1.0, std::abs(mid))) break;
        if (gmid > 0.0) {
            lo = mid;
        } else {
            hi = mid;
            ghi = gmid;
        }
        double next = 0.5 * (lo + hi);
        if (next == mid) break;  // bracket exhausted at double precision
        mid = next;
        gmid = g(mid);
    }
    (void)ghi;
    return {mid, std::abs(gmid), {lo, hi}};
}

FixedPointResult shrink_s1(const MeanSpec& mean, double a, double b, double tol,
                           int subintervals) {
    if (mean.arity() < 3) throw ArityMismatch("s1 requires arity >= 3");
    if (!(a < b)) throw DomainViolation("s1 requires a < b");
    if (!domain_contains(mean.domain(), a) || !domain_contains(mean.domain(), b)) {
        throw DomainViolation("s1 endpoints outside the mean's domain");
    }
    std::vector<double> args(static_cast<std::size_t>(mean.arity()));
    auto g = [&](double x) {
        args.front() = a;
        for (std::size_t h = 1; h + 1 < args.size(); ++h) args[h] = x;
        args.back() = b;
        return eval_mean(mean, args) - x;
    };
    return leftmost_root(g, a, b, tol, subintervals);
}

double shrink_s2(const MeanSpec& mean, double a, double b) {
    if (mean.arity() % 2 != 0) throw OddArity("s2 requires an even arity");
    if (!(a <= b)) throw DomainViolation("s2 requires a <= b");
    std::size_t half = static_cast<std::size_t>(mean.arity()) / 2;
    std::vector<double> args(static_cast<std::size_t>(mean.arity()), a);
    for (std::size_t h = half; h < args.size(); ++h) args[h] = b;
    return eval_mean(mean, args);
}

double shrink_s3(const MeanSpec& mean, std::span<const double> values) {
    if (mean.arity() % 2 != 0) throw OddArity("s3 requires an even arity");
    if (static_cast<int>(values.size()) * 2 != mean.arity()) {
        throw ArityMismatch("s3 expects arity/2 values");
    }
    std::vector<double> args(values.begin(), values.end());
    args.insert(args.end(), values.begin(), values.end());
    return eval_mean(mean, args);
}

}  // namespace meanext
