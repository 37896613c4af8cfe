#pragma once

#include <functional>
#include <span>
#include <utility>

#include "meanext/means.hpp"

namespace meanext {

struct FixedPointResult {
    double x = 0.0;
    double residual = 0.0;  // |K(a,x,...,x,b) - x| at the returned x
    std::pair<double, double> bracket{0.0, 0.0};
};

// Leftmost root of g on (a,b), assuming g(a+) >= 0 >= g(b-): scans
// `subintervals` uniform cells left to right for the first sign change, then
// bisects to width <= tol and residual <= tol*max(1,|x|). Throws NoSignChange
// when the scan finds no bracket.
FixedPointResult leftmost_root(const std::function<double(double)>& g, double a, double b,
                               double tol, int subintervals);

// s1: the least x in (a,b) with K(a,x,...,x,b) = x (one a, one b, arity-2
// copies of x; a placed first and b last). Requires arity >= 3 and a < b.
FixedPointResult shrink_s1(const MeanSpec& mean, double a, double b, double tol = 1e-12,
                           int subintervals = 1024);

// s2: K(a,...,a,b,...,b) with n copies of each; arity must be even.
double shrink_s2(const MeanSpec& mean, double a, double b);

// s3: K(v_1,...,v_n,v_1,...,v_n) for a 2n-variable mean.
double shrink_s3(const MeanSpec& mean, std::span<const double> values);

}  // namespace meanext
