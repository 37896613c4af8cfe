#include "property_suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "meanext/iteration.hpp"
#include "meanext/markov.hpp"
#include "meanext/rng.hpp"
#include "meanext/shrink_ops.hpp"
#include "meanext/symmetrize.hpp"

namespace meanext::props {

namespace {

constexpr double kTol = 1e-12;

struct Failures {
    std::vector<std::string> list;

    void check(bool ok, const std::string& msg) {
        if (!ok && list.size() < 25) list.push_back(msg);
    }
};

std::vector<MeanSpec> qa_two_means() {
    return {MeanSpec::arithmetic(2), MeanSpec::geometric(2),
            MeanSpec::quasi_arithmetic(Generator::power(-1), 2),
            MeanSpec::quasi_arithmetic(Generator::power(2), 2),
            MeanSpec::quasi_arithmetic(Generator::exp(1), 2)};
}

std::vector<Generator> generator_set() {
    return {Generator::power(1), Generator::log(), Generator::power(-1), Generator::power(2),
            Generator::exp(1)};
}

std::vector<double> sorted_sample(Rng& rng, int count, double lo, double hi) {
    auto v = rng.uniform_vector(static_cast<std::size_t>(count), lo, hi);
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

std::vector<std::string> iteration_failures() {
    Failures f;

    // Bracketing and order preservation along full runs, tolerance 0.
    {
        Rng rng(101);
        std::vector<MeanSpec> means = qa_two_means();
        means.push_back(MeanSpec::midrange(2));
        for (const auto& mean : means) {
            for (int m = 3; m <= 6; ++m) {
                IndexSystem system = construct_admissible(2, m);
                std::vector<double> v = sorted_sample(rng, m, 0.5, 5.0);
                std::vector<double> prev = v;
                for (int step = 1; step <= 5000; ++step) {
                    v = iterate(mean, system, v, 1, false).values;
                    f.check(std::is_sorted(v.begin(), v.end()),
                            "state not sorted: " + mean.describe() + " m=" + std::to_string(m) +
                                " step " + std::to_string(step));
                    f.check(v.front() >= prev.front() && v.back() <= prev.back(),
                            "bracket opened: " + mean.describe() + " m=" + std::to_string(m) +
                                " step " + std::to_string(step));
                    if (v.back() - v.front() <= kTol) break;
                    prev = v;
                }
            }
        }
    }

    // Stability: extending the k-step image reproduces the limit.
    {
        Rng rng(102);
        IndexSystem system = construct_admissible(2, 5);
        for (const auto& mean : qa_two_means()) {
            std::vector<double> v = sorted_sample(rng, 5, 0.5, 5.0);
            double limit = extend(mean, system, v).limit;
            for (long k : {1L, 2L, 5L}) {
                auto state = iterate(mean, system, v, k);
                double relim = extend(mean, system, state.values).limit;
                f.check(std::abs(relim - limit) <= 2 * kTol,
                        "limit moved after " + std::to_string(k) + " warmup steps: " +
                            mean.describe());
            }
        }
    }

    // Sandwich: K of the lowest/highest n inputs brackets the limit.
    {
        Rng rng(103);
        for (int n = 2; n <= 3; ++n) {
            for (int m = n + 1; m <= 6; ++m) {
                IndexSystem system = construct_admissible(n, m);
                MeanSpec mean = MeanSpec::geometric(n);
                for (int s = 0; s < 10; ++s) {
                    std::vector<double> v = sorted_sample(rng, m, 0.5, 5.0);
                    double limit = extend(mean, system, v).limit;
                    std::vector<double> low(v.begin(), v.begin() + n);
                    std::vector<double> high(v.end() - n, v.end());
                    f.check(eval_mean(mean, low) <= limit + kTol &&
                                limit <= eval_mean(mean, high) + kTol,
                            "sandwich violated at n=" + std::to_string(n) +
                                " m=" + std::to_string(m));
                }
            }
        }
    }

    // Strict chain for (2,3):
    // a < K(a,K(a,b)) <= KT(a,a,b) < K(a,b) < KT(a,b,b) <= K(K(a,b),b) < b.
    {
        IndexSystem t23 = unique_two_system(3);
        for (const auto& mean : qa_two_means()) {
            for (auto [a, b] : grid_pairs(0.5, 4.0, 6)) {
                double k = eval_mean(mean, std::array{a, b});
                double low = extend(mean, t23, std::array{a, a, b}).limit;
                double high = extend(mean, t23, std::array{a, b, b}).limit;
                double inner_low = eval_mean(mean, std::array{a, k});
                double inner_high = eval_mean(mean, std::array{k, b});
                bool chain = a < inner_low && inner_low <= low + kTol && low < k - kTol &&
                             k < high - kTol && high <= inner_high + kTol && inner_high < b;
                f.check(chain, "strict (2,3) chain broken for " + mean.describe() + " at (" +
                                   std::to_string(a) + "," + std::to_string(b) + ")");
            }
        }
    }

    // Non-quasi-constancy: the extreme sequences stay strictly away from the
    // limit while the spread is above 10*tol.
    {
        Rng rng(104);
        for (const auto& gen : generator_set()) {
            for (int m = 3; m <= 5; ++m) {
                MeanSpec mean = MeanSpec::quasi_arithmetic(gen, 2);
                IndexSystem system = unique_two_system(m);
                std::vector<double> v = sorted_sample(rng, m, 0.5, 5.0);
                v.front() = 0.5;
                v.back() = 5.0;  // distinct endpoints
                double limit = extend(mean, system, v).limit;
                std::vector<double> state = v;
                for (int step = 0; step <= 100000; ++step) {
                    if (state.back() - state.front() < 10 * kTol) break;
                    f.check(state.front() < limit - kTol && state.back() > limit + kTol,
                            "quasi-constant tail for " + mean.describe() +
                                " m=" + std::to_string(m) + " at step " + std::to_string(step));
                    state = iterate(mean, system, state, 1, false).values;
                }
            }
        }
    }

    // Fixed point of the extended mean: K^T(a,x,...,x,b) = x has a root, and
    // the root sits between K^T(a,...,a,b) and K^T(a,b,...,b).
    {
        for (int m : {3, 4}) {
            IndexSystem system = construct_admissible(2, m);
            for (const auto& mean : {MeanSpec::geometric(2), MeanSpec::arithmetic(2)}) {
                double a = 1.0, b = 4.0;
                auto kt = [&](std::vector<double> v) { return extend(mean, system, v).limit; };
                auto g = [&](double x) {
                    std::vector<double> v(static_cast<std::size_t>(m), x);
                    v.front() = a;
                    v.back() = b;
                    return kt(v) - x;
                };
                auto root = leftmost_root(g, a, b, 1e-10, 128);
                f.check(root.residual <= 1e-9,
                        "extended fixed point residual too large for " + mean.describe());
                std::vector<double> low(static_cast<std::size_t>(m), a);
                low.back() = b;
                std::vector<double> high(static_cast<std::size_t>(m), b);
                high.front() = a;
                f.check(kt(low) - 1e-9 <= root.x && root.x <= kt(high) + 1e-9,
                        "extended fixed point outside its bounds for " + mean.describe());
            }
        }
    }

    // Equivalence transport: conjugation commutes with extension.
    {
        Rng rng(105);
        for (const auto& system : {construct_admissible(2, 3), construct_admissible(2, 5),
                                   construct_admissible(3, 5)}) {
            MeanSpec base = MeanSpec::arithmetic(system.arity());
            for (const Generator& gen : {Generator::log(), Generator::exp(1)}) {
                MeanSpec conj = conjugate(base, gen);
                for (int s = 0; s < 25; ++s) {
                    std::vector<double> v = sorted_sample(rng, system.sequences(), 0.5, 5.0);
                    double direct = extend(conj, system, v).limit;
                    std::vector<double> mapped(v.size());
                    std::transform(v.begin(), v.end(), mapped.begin(),
                                   [&](double x) { return gen.apply(x); });
                    std::sort(mapped.begin(), mapped.end());
                    double transported = gen.invert(extend(base, system, mapped).limit);
                    f.check(std::abs(direct - transported) <= 1e-9,
                            "transport mismatch via " + gen.describe());
                }
            }
        }
    }

    // Quasi-arithmetic concordance: the extension is the higher-arity
    // quasi-arithmetic mean.
    {
        Rng rng(106);
        for (const auto& gen : generator_set()) {
            for (int n = 2; n <= 5; ++n) {
                for (int m = n + 1; m <= 6; ++m) {
                    IndexSystem system = construct_admissible(n, m);
                    MeanSpec small = MeanSpec::quasi_arithmetic(gen, n);
                    MeanSpec big = MeanSpec::quasi_arithmetic(gen, m);
                    for (int s = 0; s < 100; ++s) {
                        std::vector<double> v = sorted_sample(rng, m, 0.1, 10.0);
                        double limit = extend(small, system, v).limit;
                        f.check(std::abs(limit - eval_mean(big, v)) <= 1e-9,
                                "extension disagrees with the m-variable mean: " +
                                    gen.describe() + " (" + std::to_string(n) + "," +
                                    std::to_string(m) + ")");
                    }
                }
            }
        }
    }

    // Shrink concordance: the general shrink is the lower-arity mean.
    {
        Rng rng(107);
        for (const auto& gen : generator_set()) {
            for (int m = 3; m <= 6; ++m) {
                for (int n = 2; n < m; ++n) {
                    MeanSpec big = MeanSpec::quasi_arithmetic(gen, m);
                    MeanSpec small = MeanSpec::quasi_arithmetic(gen, n);
                    for (int s = 0; s < 100; ++s) {
                        std::vector<double> v = sorted_sample(rng, n, 0.1, 10.0);
                        double limit = shrink_general(big, n, v).limit;
                        f.check(std::abs(limit - eval_mean(small, v)) <= 1e-9,
                                "shrink disagrees with the n-variable mean: " + gen.describe() +
                                    " (" + std::to_string(m) + "," + std::to_string(n) + ")");
                    }
                }
            }
        }
    }

    // Round means pin their fixed points: KT23(a,k,b) = KT24(a,k,k,b) = k and
    // KT24(a,a,b,b) = K(a,b).
    {
        IndexSystem t23 = unique_two_system(3);
        IndexSystem t24 = unique_two_system(4);
        auto grid = grid_pairs(0.5, 4.0, 5);
        for (const auto& mean : qa_two_means()) {
            RoundReport round = check_round(mean, grid, 1e-9);
            f.check(round.is_round, "expected round: " + mean.describe());
            if (!round.is_round) continue;
            for (auto [a, b] : grid) {
                double k = eval_mean(mean, std::array{a, b});
                double via3 = extend(mean, t23, std::array{a, k, b}).limit;
                double via4 = extend(mean, t24, std::array{a, k, k, b}).limit;
                double pairwise = extend(mean, t24, std::array{a, a, b, b}).limit;
                f.check(std::abs(via3 - k) <= 1e-9 && std::abs(via4 - k) <= 1e-9 &&
                            std::abs(pairwise - k) <= 1e-9,
                        "round fixed point drifted for " + mean.describe());
            }
        }
    }

    // Midrange non-concordance: equal one-sided values rule out any
    // 2-variable origin, and re-extending the shrink moves the value.
    {
        MeanSpec mid3 = MeanSpec::midrange(3);
        Rng rng(108);
        for (int s = 0; s < 50; ++s) {
            double a = rng.uniform(-5.0, 2.0);
            double b = a + rng.uniform(0.5, 5.0);
            double low = eval_mean(mid3, std::array{a, a, b});
            double high = eval_mean(mid3, std::array{a, b, b});
            f.check(low == high, "midrange one-sided values split");
        }
        MeanFn shrunk = [&](std::span<const double> v) {
            return shrink_general(mid3, 2, v).limit;
        };
        double reext = extend(shrunk, unique_two_system(3), std::array{0.0, 0.0, 3.0}).limit;
        f.check(std::abs(reext - 1.0) <= 1e-9, "re-extended midrange shrink is not 1.0");
        f.check(std::abs(reext - 1.5) > 0.4, "re-extended midrange shrink matches midrange");
    }

    return f.list;
}

std::vector<std::string> shrink_ops_failures() {
    Failures f;
    MeanSpec pairwise4 = MeanSpec::pairwise_sqrt_avg(4);
    MeanSpec sqrtpair3 = MeanSpec::sqrt_pair_avg(3);

    // s1 monotonicity in both endpoints on a sampled grid.
    {
        std::vector<double> pts{0.2, 0.7, 1.5, 3.0, 6.0};
        for (const auto& mean : {pairwise4, sqrtpair3, MeanSpec::nonsym_quad4()}) {
            for (double a : pts) {
                for (double b : pts) {
                    if (!(a < b)) continue;
                    double base = shrink_s1(mean, a, b).x;
                    for (double da : {0.0, 0.3}) {
                        for (double db : {0.0, 0.4}) {
                            if (da == 0.0 && db == 0.0) continue;
                            if (!(a + da < b + db)) continue;
                            double bumped = shrink_s1(mean, a + da, b + db).x;
                            f.check(base <= bumped + 1e-9,
                                    "s1 not monotone for " + mean.describe());
                        }
                    }
                }
            }
        }
    }

    // s1 strict internality.
    {
        for (auto [a, b] : grid_pairs(0.3, 5.0, 6)) {
            if (b - a <= 100 * kTol) continue;
            double x = shrink_s1(pairwise4, a, b).x;
            f.check(a + kTol < x && x < b - kTol, "s1 hugs an endpoint");
        }
    }

    // s1 != s2 for the pairwise-sqrt 4-mean.
    f.check(std::abs(shrink_s1(pairwise4, 1, 4).x - shrink_s2(pairwise4, 1, 4)) > 1e-4,
            "s1 and s2 coincide at (1,4)");

    // The reported root is leftmost: a 4x finer scan finds the same one.
    {
        for (const auto& mean : {pairwise4, sqrtpair3, MeanSpec::nonsym_quad4()}) {
            for (auto [a, b] :
                 {std::pair{0.5, 2.0}, std::pair{1.0, 4.0}, std::pair{0.1, 9.0}}) {
                double coarse = shrink_s1(mean, a, b).x;
                double fine = shrink_s1(mean, a, b, 1e-12, 4096).x;
                f.check(std::abs(coarse - fine) <= 1e-8,
                        "finer scan found an earlier root for " + mean.describe());
            }
        }
    }

    // s2/s3 of quasi-arithmetic means reproduce the lower-arity member.
    {
        Rng rng(201);
        for (const auto& gen : {Generator::power(1), Generator::log(), Generator::power(2)}) {
            MeanSpec big4 = MeanSpec::quasi_arithmetic(gen, 4);
            MeanSpec two = MeanSpec::quasi_arithmetic(gen, 2);
            for (int s = 0; s < 50; ++s) {
                double a = rng.uniform(0.1, 10.0);
                double b = a + rng.uniform(0.0, 5.0);
                f.check(std::abs(shrink_s2(big4, a, b) - eval_mean(two, std::array{a, b})) <=
                            1e-12,
                        "s2 misses the quasi-arithmetic 2-mean for " + gen.describe());
                std::array v{a, b};
                f.check(std::abs(shrink_s3(big4, v) - eval_mean(two, v)) <= 1e-12,
                        "s3 misses the quasi-arithmetic 2-mean for " + gen.describe());
            }
        }
    }

    // Shrinking methods genuinely diverge on the sqrt-pair 3-mean.
    {
        double limit = shrink_general(sqrtpair3, 2, std::array{0.1, 2.0}).limit;
        double s1 = shrink_s1(sqrtpair3, 0.1, 2.0).x;
        f.check(limit < 0.781 && 0.781 < s1, "method divergence at (0.1,2) not observed");
    }

    return f.list;
}

std::vector<std::string> markov_failures() {
    Failures f;

    // Coefficient identity: arithmetic iterates are the M^k-weighted inputs.
    {
        Rng rng(301);
        std::vector<IndexSystem> systems{
            construct_admissible(2, 5), construct_admissible(3, 5),
            IndexSystem(3, {{1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {2, 4, 5}, {3, 4, 5}}),
            IndexSystem(3, {{1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}})};
        MeanSpec am2 = MeanSpec::arithmetic(2);
        MeanSpec am3 = MeanSpec::arithmetic(3);
        for (const auto& system : systems) {
            const MeanSpec& mean = system.arity() == 2 ? am2 : am3;
            SquareMatrix m = transition_matrix(system);
            std::vector<double> v = sorted_sample(rng, system.sequences(), 0.1, 10.0);
            for (long k = 1; k <= 12; ++k) {
                auto state = iterate(mean, system, v, k);
                SquareMatrix p = matrix_power(m, k);
                for (int i = 0; i < system.sequences(); ++i) {
                    double weighted = 0.0;
                    for (int l = 0; l < system.sequences(); ++l) {
                        weighted += p(i, l) * v[static_cast<std::size_t>(l)];
                    }
                    f.check(std::abs(state.values[static_cast<std::size_t>(i)] - weighted) <=
                                1e-12,
                            "coefficient identity broken at k=" + std::to_string(k));
                }
            }
        }
    }

    // Every constructed admissible system yields a doubly stochastic,
    // irreducible, aperiodic chain.
    for (int n = 2; n <= 7; ++n) {
        for (int m = n + 1; m <= 8; ++m) {
            auto verdict = check_chain(transition_matrix(construct_admissible(n, m)));
            f.check(verdict.doubly_stochastic && verdict.irreducible && verdict.aperiodic,
                    "chain verdict failed for (" + std::to_string(n) + "," + std::to_string(m) +
                        ")");
        }
    }

    // Property (2) is exactly double stochasticity across the repeat-free
    // systems satisfying (1),(3),(4). Tuples with repeated coordinates split
    // the two notions (the matrix weighs multiplicities, membership does
    // not); there property (2) must simply fail.
    for (auto [n, m] : {std::pair{2, 4}, std::pair{3, 5}}) {
        auto systems = enumerate_systems(n, m, LONG_MAX, false);
        f.check(!systems.empty(), "relaxed enumeration found nothing");
        int nontrivial = 0;
        for (const auto& system : systems) {
            auto verdict = check_admissible(system);
            bool p2 = true;
            for (const auto& violation : verdict.violations) {
                if (violation.property == 2) p2 = false;
            }
            bool repeat_free = true;
            for (const auto& t : system.tuples()) {
                repeat_free &= std::adjacent_find(t.begin(), t.end()) == t.end();
            }
            bool ds = check_chain(transition_matrix(system)).doubly_stochastic;
            if (repeat_free) {
                f.check(p2 == ds, "property (2) and double stochasticity disagree");
                nontrivial += (p2 != true) ? 1 : 0;
            } else {
                f.check(!p2, "repeated coordinates cannot satisfy property (2)");
            }
        }
        f.check(nontrivial > 0, "no property-(2) violations among repeat-free systems");
    }

    // Distance from the uniform matrix is nonincreasing along powers of two,
    // down to the rounding floor of repeated squaring.
    for (int n = 2; n <= 3; ++n) {
        for (int m = n + 1; m <= 6; ++m) {
            SquareMatrix matrix = transition_matrix(construct_admissible(n, m));
            double prev = uniform_limit_error(matrix, 1);
            for (long k = 2; k <= 1024; k *= 2) {
                double err = uniform_limit_error(matrix, k);
                f.check(err <= prev || err <= 1e-12,
                        "uniform error increased at k=" + std::to_string(k));
                prev = err;
            }
        }
    }

    return f.list;
}

std::vector<std::string> symmetrize_failures() {
    Failures f;
    Rng rng(401);
    for (int s = 0; s < 100; ++s) {
        double w = rng.uniform(0.05, 0.95);
        double a = rng.uniform(-5.0, 5.0);
        double b = a + rng.uniform(0.0, 8.0);
        MeanSpec mean = MeanSpec::weighted_two(w);

        SymTrace fwd = symmetrize(mean, a, b);
        SymTrace rev = symmetrize(mean, b, a);
        f.check(fwd.limit == rev.limit, "symmetrized limit depends on input order");
        f.check(a <= fwd.limit && fwd.limit <= b, "symmetrized limit escapes [a,b]");

        for (std::size_t i = 1; i < fwd.pairs.size(); ++i) {
            auto [pa, pb] = fwd.pairs[i - 1];
            auto [ca, cb] = fwd.pairs[i];
            f.check(ca >= pa && cb <= pb && ca <= cb, "symmetrization bracket opened");
        }
    }
    return f.list;
}

}  // namespace meanext::props
