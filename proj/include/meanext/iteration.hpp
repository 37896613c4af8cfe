#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "meanext/index_system.hpp"
#include "meanext/means.hpp"

namespace meanext {

struct IterationState {
    std::vector<double> values;
    long step = 0;
};

enum class ConvergenceStatus { Converged, MaxIterationsExceeded };

struct ConvergenceReport {
    double limit = 0.0;
    long iterations = 0;
    double final_spread = 0.0;
    ConvergenceStatus status = ConvergenceStatus::Converged;
    // Set when a non-symmetric mean ran on caller-ordered (unsorted) inputs.
    bool unsorted_warning = false;
    std::optional<std::vector<IterationState>> trace;
};

struct IterationOptions {
    double tol = 1e-12;
    long max_iter = 1'000'000;
    bool capture_trace = false;  // first 64 states only
    // Throw NonConvergence instead of reporting MaxIterationsExceeded.
    bool strict = false;
};

// Arbitrary row evaluator for the generic engine entry points.
using MeanFn = std::function<double(std::span<const double>)>;

// Exact k-step image of the coupled recursion
//   a_i(k+1) = K(a_{t_i[1]}(k), ..., a_{t_i[arity]}(k)).
// Admissibility is NOT required (this powers the counterexamples).
IterationState iterate(const MeanSpec& mean, const IndexSystem& system,
                       std::span<const double> values, long k, bool sort_inputs = true);
IterationState iterate(const MeanFn& mean, const IndexSystem& system,
                       std::span<const double> values, long k);

// Runs the coupled sequences of an admissible system to a common limit:
// iterates until max-min <= tol, reports the bracket midpoint. Inputs are
// sorted ascending first when the mean is symmetric.
ConvergenceReport extend(const MeanSpec& mean, const IndexSystem& system,
                         std::span<const double> values, const IterationOptions& options = {});
ConvergenceReport extend(const MeanFn& mean, const IndexSystem& system,
                         std::span<const double> values, const IterationOptions& options = {},
                         bool sort_inputs = true);

// Coupled iteration with one mean per row, K_1 <= ... <= K_m (validated by
// seeded sampling; a found violation throws MeansNotOrdered). With n = m the
// system may be the identity rows, generalizing classical AGM compounding.
ConvergenceReport compound(std::span<const MeanSpec> means, const IndexSystem& system,
                           std::span<const double> values, const IterationOptions& options = {},
                           std::uint64_t order_check_seed = 0x5eedu);

// Shrinks an m-variable mean to n variables by running it over T_{m,n}.
ConvergenceReport shrink_general(const MeanSpec& mean, int n, std::span<const double> values,
                                 const IterationOptions& options = {});

struct OrderReport {
    bool holds = true;
    std::optional<std::vector<double>> witness;
    double limit_a = 0.0;  // extended values at the witness
    double limit_b = 0.0;
};

// Samples sorted inputs and checks extend(meanA) <= extend(meanB) + tol.
OrderReport compare_extended(const MeanSpec& mean_a, const MeanSpec& mean_b,
                             const IndexSystem& system, int samples, std::uint64_t seed,
                             double tol);

}  // namespace meanext
