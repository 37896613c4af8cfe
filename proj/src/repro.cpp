#include "meanext/repro.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "meanext/iteration.hpp"
#include "meanext/markov.hpp"
#include "meanext/serialization.hpp"
#include "meanext/shrink_ops.hpp"

namespace meanext {

namespace {

ReproCase approx(std::string id, std::string description, double computed, double expected,
                 double tol) {
    ReproCase c;
    c.id = std::move(id);
    c.description = std::move(description);
    c.expected = format_double(expected);
    c.computed = computed;
    c.tolerance = tol;
    c.pass = std::abs(computed - expected) <= tol;
    return c;
}

ReproCase below(std::string id, std::string description, double computed, double bound) {
    ReproCase c;
    c.id = std::move(id);
    c.description = std::move(description);
    c.expected = "< " + format_double(bound);
    c.computed = computed;
    c.pass = computed < bound;
    return c;
}

ReproCase within(std::string id, std::string description, double computed, double lo, double hi) {
    ReproCase c;
    c.id = std::move(id);
    c.description = std::move(description);
    c.expected = "in [" + format_double(lo) + ", " + format_double(hi) + "]";
    c.computed = computed;
    c.pass = lo <= computed && computed <= hi;
    return c;
}

ReproCase boolean(std::string id, std::string description, bool ok) {
    ReproCase c;
    c.id = std::move(id);
    c.description = std::move(description);
    c.expected = "true";
    c.computed = ok ? 1.0 : 0.0;
    c.pass = ok;
    return c;
}

}  // namespace

std::vector<ReproCase> repro_suite() {
    std::vector<ReproCase> cases;

    // Property (2) violation: the coupled averages drift below the 4-variable
    // arithmetic mean, so the limit cannot be it.
    {
        IndexSystem bad(2, {{1, 2}, {1, 3}, {1, 4}, {3, 4}});
        auto state = iterate(MeanSpec::arithmetic(2), bad, std::vector{0.0, 1.0, 1.0, 1.0}, 4);
        cases.push_back(approx("ext-2-4-property2-violation",
                               "arithmetic pairs over a non-admissible system, 4th value at k=4",
                               state.values[3], 0.6875, 1e-15));
    }

    // Complement system for (5,6): the midrange mean collapses in one step.
    {
        IndexSystem complement = construct_admissible(5, 6);
        std::vector<double> v{1.0, 1.0, 2.0, 3.0, 4.0, 4.0};
        auto state = iterate(MeanSpec::midrange(5), complement, v, 1);
        double dev = 0.0;
        for (double x : state.values) dev = std::max(dev, std::abs(x - 2.5));
        cases.push_back(approx("midrange-5-6-collapse-step",
                               "one step of the (5,6) complement system equalizes all six values",
                               2.5 + dev, 2.5, 1e-15));
        auto report = extend(MeanSpec::midrange(5), complement, v);
        cases.push_back(approx("midrange-5-6-extend-limit", "extended midrange limit",
                               report.limit, 2.5, 1e-12));
        cases.push_back(boolean("enum-5-6-complement",
                                "the complement system is the only admissible one for (5,6)",
                                enumerate_admissible(5, 6) ==
                                    std::vector<IndexSystem>{complement}));
    }

    // Admissibility does not pin the system down: two distinct (3,5) systems.
    {
        IndexSystem first(3, {{1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {2, 4, 5}, {3, 4, 5}});
        IndexSystem second(3, {{1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}});
        bool both = check_admissible(first).admissible && check_admissible(second).admissible;
        cases.push_back(boolean("admissible-3-5-both", "both (3,5) example systems pass",
                                both));
        auto all = enumerate_admissible(3, 5);
        bool contains = std::find(all.begin(), all.end(), first) != all.end() &&
                        std::find(all.begin(), all.end(), second) != all.end();
        cases.push_back(boolean("enumerate-3-5-nonunique",
                                "enumeration finds at least the two example systems",
                                all.size() >= 2 && contains));
    }

    // n=2 uniqueness: exhaustive enumeration agrees with the closed pattern.
    for (int m = 3; m <= 6; ++m) {
        auto all = enumerate_admissible(2, m);
        bool unique = all.size() == 1 && all.front() == unique_two_system(m);
        cases.push_back(boolean("unique-2-" + std::to_string(m),
                                "exactly one admissible system for (2," + std::to_string(m) + ")",
                                unique));
    }

    // s1/s2 closed forms for the pairwise-sqrt 4-mean at (1,4).
    {
        MeanSpec mean = MeanSpec::pairwise_sqrt_avg(4);
        double a = 1.0, b = 4.0;
        double s1_closed = std::pow(
            (std::sqrt(a) + std::sqrt(b) + std::sqrt(a + b + 7.0 * std::sqrt(a * b))) / 5.0, 2.0);
        double s2_closed = (a + b + 4.0 * std::sqrt(a * b)) / 6.0;
        double s1 = shrink_s1(mean, a, b).x;
        double s2 = shrink_s2(mean, a, b);
        cases.push_back(approx("s1-pairwisesqrt4-closed-form",
                               "s1 fixed point matches the closed form", s1, s1_closed, 1e-9));
        cases.push_back(approx("s2-pairwisesqrt4-closed-form",
                               "s2 duplication matches (a+b+4*sqrt(ab))/6", s2, s2_closed, 1e-12));
        cases.push_back(boolean("s1-vs-s2-gap", "the two shrink operators disagree at (1,4)",
                                std::abs(s1 - s2) > 1e-4));
    }

    // The sqrt-pair 3-mean at (0.1,2): s1 near 0.784 while the general
    // shrinking method drops below 0.781.
    {
        MeanSpec mean = MeanSpec::sqrt_pair_avg(3);
        double s1 = shrink_s1(mean, 0.1, 2.0).x;
        cases.push_back(within("s1-sqrtpair3-approx-0784", "s1 value at (0.1,2)", s1, 0.7840,
                               0.7855));
        auto b3 = iterate(mean, shrink_system(3, 2), std::vector{0.1, 2.0}, 3).values[1];
        cases.push_back(below("shrink-sqrtpair3-b3", "upper shrink sequence at step 3", b3,
                              0.781));
        double limit = shrink_general(mean, 2, std::vector{0.1, 2.0}).limit;
        cases.push_back(below("shrink-sqrtpair3-limit", "general shrink limit at (0.1,2)", limit,
                              0.781));
    }

    // The non-symmetric quadratic 4-mean: s1 = s2 = (a+b)/2, yet the general
    // shrinking method lands strictly below the midpoint.
    {
        MeanSpec mean = MeanSpec::nonsym_quad4();
        double s1 = shrink_s1(mean, 1.0, 3.0).x;
        double s2 = shrink_s2(mean, 1.0, 3.0);
        cases.push_back(approx("nonsymquad4-s1-midpoint", "s1 equals (a+b)/2 at (1,3)", s1, 2.0,
                               1e-9));
        cases.push_back(approx("nonsymquad4-s2-midpoint", "s2 equals (a+b)/2 at (1,3)", s2, 2.0,
                               1e-12));
        auto b4 = iterate(mean, shrink_system(4, 2), std::vector{1.0, 3.0}, 4, false).values[1];
        cases.push_back(below("nonsymquad4-shrink-b4", "upper shrink sequence at step 4", b4,
                              2.0));
        double limit = shrink_general(mean, 2, std::vector{1.0, 3.0}).limit;
        cases.push_back(below("nonsymquad4-shrink-limit", "general shrink limit at (1,3)", limit,
                              2.0 - 1e-6));
    }

    // Midrange non-concordance: equal one-sided values block any 2-variable
    // representation, and re-extending the shrink lands elsewhere.
    {
        MeanSpec mid3 = MeanSpec::midrange(3);
        double dev = 0.0;
        for (double a : {0.5, 1.0, 2.0}) {
            for (double b : {3.0, 5.0, 8.0}) {
                double low = eval_mean(mid3, std::array{a, a, b});
                double high = eval_mean(mid3, std::array{a, b, b});
                dev = std::max(dev, std::abs(high - low));
            }
        }
        cases.push_back(approx("midrange-equal-ends", "L(a,a,b) equals L(a,b,b) exactly", dev,
                               0.0, 0.0));

        MeanFn shrunk = [&](std::span<const double> v) {
            return shrink_general(mid3, 2, v).limit;
        };
        double reext =
            extend(shrunk, unique_two_system(3), std::vector{0.0, 0.0, 3.0}).limit;
        cases.push_back(approx("midrange-reextend", "re-extended shrink of midrange at (0,0,3)",
                               reext, 1.0, 1e-9));
        cases.push_back(boolean("midrange-reextend-differs",
                                "re-extension misses the midrange value 1.5",
                                std::abs(reext - eval_mean(mid3, std::array{0.0, 0.0, 3.0})) >
                                    0.4));
    }

    // Uniform Markov limits for every constructed system up to (n,m)=(...,6).
    for (int n = 2; n <= 5; ++n) {
        for (int m = n + 1; m <= 6; ++m) {
            double err = uniform_limit_error(transition_matrix(construct_admissible(n, m)), 1024);
            cases.push_back(below("markov-uniform-" + std::to_string(n) + "-" + std::to_string(m),
                                  "M^1024 is uniform for the constructed (" + std::to_string(n) +
                                      "," + std::to_string(m) + ") system",
                                  err, 1e-10));
        }
    }

    return cases;
}

}  // namespace meanext
