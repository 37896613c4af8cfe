#include "meanext/iteration.hpp"

#include <algorithm>
#include <cmath>

#include "meanext/rng.hpp"

namespace meanext {

namespace {

constexpr std::size_t kTraceCap = 64;

void validate_values(const IndexSystem& system, std::span<const double> values) {
    if (static_cast<int>(values.size()) != system.sequences()) {
        throw MalformedSystem("expected " + std::to_string(system.sequences()) +
                              " values, got " + std::to_string(values.size()));
    }
}

void validate_domain(const MeanSpec& mean, std::span<const double> values) {
    for (double x : values) {
        if (!domain_contains(mean.domain(), x)) {
            throw DomainViolation("value " + std::to_string(x) + " outside the domain of " +
                                  mean.describe());
        }
    }
}

void step_once(const std::vector<MeanFn>& rows, const IndexSystem& system,
               const std::vector<double>& current, std::vector<double>& next,
               std::vector<double>& args) {
    for (int i = 0; i < system.sequences(); ++i) {
        const IndexTuple& t = system.tuples()[static_cast<std::size_t>(i)];
        for (int h = 0; h < system.arity(); ++h) {
            args[static_cast<std::size_t>(h)] = current[static_cast<std::size_t>(t[static_cast<std::size_t>(h)] - 1)];
        }
        next[static_cast<std::size_t>(i)] = rows[static_cast<std::size_t>(i)](args);
    }
}

double spread_of(const std::vector<double>& v) {
    auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    return *mx - *mn;
}

ConvergenceReport run_coupled(const std::vector<MeanFn>& rows, const IndexSystem& system,
                              std::vector<double> values, const IterationOptions& options,
                              bool warn_unsorted) {
    ConvergenceReport report;
    report.unsorted_warning = warn_unsorted;
    if (options.capture_trace) {
        report.trace.emplace();
        report.trace->push_back({values, 0});
    }

    std::vector<double> next(values.size());
    std::vector<double> args(static_cast<std::size_t>(system.arity()));
    double spread = spread_of(values);
    long k = 0;
    while (spread > options.tol && k < options.max_iter) {
        step_once(rows, system, values, next, args);
        values.swap(next);
        ++k;
        if (report.trace && report.trace->size() < kTraceCap) {
            report.trace->push_back({values, k});
        }
        spread = spread_of(values);
    }

    auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    report.limit = (*mn + *mx) / 2.0;
    report.iterations = k;
    report.final_spread = spread;
    report.status = spread <= options.tol ? ConvergenceStatus::Converged
                                          : ConvergenceStatus::MaxIterationsExceeded;
    if (options.strict && report.status == ConvergenceStatus::MaxIterationsExceeded) {
        throw NonConvergence("spread " + std::to_string(spread) + " above tolerance after " +
                             std::to_string(k) + " iterations");
    }
    return report;
}

MeanFn row_fn(const MeanSpec& mean) {
    return [&mean](std::span<const double> v) { return eval_mean(mean, v); };
}

void require_admissible(const IndexSystem& system) {
    auto verdict = check_admissible(system);
    if (!verdict.admissible) {
        std::string props;
        for (int p : verdict.failed_properties()) {
            if (!props.empty()) props += ",";
            props += std::to_string(p);
        }
        throw NotAdmissible("system fails properties {" + props + "}: " +
                            verdict.violations.front().detail);
    }
}

}  // namespace

IterationState iterate(const MeanFn& mean, const IndexSystem& system,
                       std::span<const double> values, long k) {
    validate_values(system, values);
    std::vector<double> current(values.begin(), values.end());
    std::vector<double> next(current.size());
    std::vector<double> args(static_cast<std::size_t>(system.arity()));
    std::vector<MeanFn> rows(static_cast<std::size_t>(system.sequences()), mean);
    for (long step = 0; step < k; ++step) {
        step_once(rows, system, current, next, args);
        current.swap(next);
    }
    return {std::move(current), k};
}

IterationState iterate(const MeanSpec& mean, const IndexSystem& system,
                       std::span<const double> values, long k, bool sort_inputs) {
    if (mean.arity() != system.arity()) {
        throw ArityMismatch("mean arity " + std::to_string(mean.arity()) +
                            " does not match system arity " + std::to_string(system.arity()));
    }
    validate_values(system, values);
    validate_domain(mean, values);
    std::vector<double> v(values.begin(), values.end());
    if (sort_inputs) std::sort(v.begin(), v.end());
    auto state = iterate(row_fn(mean), system, v, k);
    return state;
}

ConvergenceReport extend(const MeanFn& mean, const IndexSystem& system,
                         std::span<const double> values, const IterationOptions& options,
                         bool sort_inputs) {
    require_admissible(system);
    validate_values(system, values);
    std::vector<double> v(values.begin(), values.end());
    if (sort_inputs) std::sort(v.begin(), v.end());
    std::vector<MeanFn> rows(static_cast<std::size_t>(system.sequences()), mean);
    return run_coupled(rows, system, std::move(v), options, !sort_inputs);
}

ConvergenceReport extend(const MeanSpec& mean, const IndexSystem& system,
                         std::span<const double> values, const IterationOptions& options) {
    if (mean.arity() != system.arity()) {
        throw ArityMismatch("mean arity " + std::to_string(mean.arity()) +
                            " does not match system arity " + std::to_string(system.arity()));
    }
    validate_domain(mean, values);
    return extend(row_fn(mean), system, values, options, is_symmetric(mean));
}

ConvergenceReport compound(std::span<const MeanSpec> means, const IndexSystem& system,
                           std::span<const double> values, const IterationOptions& options,
                           std::uint64_t order_check_seed) {
    if (static_cast<int>(means.size()) != system.sequences()) {
        throw MalformedSystem("need one mean per system row");
    }
    for (const auto& mean : means) {
        if (mean.arity() != system.arity()) {
            throw ArityMismatch("every compounded mean must have arity " +
                                std::to_string(system.arity()));
        }
        validate_domain(mean, values);
    }
    require_admissible(system);

    // Sampled check of the ordering hypothesis K_1 <= ... <= K_m. Absence of
    // a violation is evidence, not proof.
    bool positive = std::any_of(means.begin(), means.end(),
                                [](const MeanSpec& s) { return s.domain() == Domain::Positive; });
    Rng rng(order_check_seed);
    double lo = positive ? 0.1 : -10.0;
    for (int s = 0; s < 64; ++s) {
        std::vector<double> sample =
            rng.uniform_vector(static_cast<std::size_t>(system.arity()), lo, 10.0);
        for (std::size_t i = 0; i + 1 < means.size(); ++i) {
            double a = eval_mean(means[i], sample);
            double b = eval_mean(means[i + 1], sample);
            if (a > b + 1e-12 * std::max(1.0, std::abs(a))) {
                std::string witness;
                for (double x : sample) witness += (witness.empty() ? "" : ",") + std::to_string(x);
                throw MeansNotOrdered("K_" + std::to_string(i + 1) + "=" + std::to_string(a) +
                                      " > K_" + std::to_string(i + 2) + "=" + std::to_string(b) +
                                      " at (" + witness + ")");
            }
        }
    }

    bool all_symmetric = std::all_of(means.begin(), means.end(),
                                     [](const MeanSpec& s) { return is_symmetric(s); });
    validate_values(system, values);
    std::vector<double> v(values.begin(), values.end());
    if (all_symmetric) std::sort(v.begin(), v.end());
    std::vector<MeanFn> rows;
    rows.reserve(means.size());
    for (const auto& mean : means) rows.push_back(row_fn(mean));
    return run_coupled(rows, system, std::move(v), options, !all_symmetric);
}

ConvergenceReport shrink_general(const MeanSpec& mean, int n, std::span<const double> values,
                                 const IterationOptions& options) {
    const int m = mean.arity();
    if (n < 2 || m <= n) throw InvalidDimensions("shrink_general requires 2 <= n < mean arity");
    IndexSystem system = shrink_system(m, n);
    validate_values(system, values);
    validate_domain(mean, values);
    std::vector<double> v(values.begin(), values.end());
    bool symmetric = is_symmetric(mean);
    if (symmetric) std::sort(v.begin(), v.end());
    std::vector<MeanFn> rows(static_cast<std::size_t>(n), row_fn(mean));
    return run_coupled(rows, system, std::move(v), options, !symmetric);
}

OrderReport compare_extended(const MeanSpec& mean_a, const MeanSpec& mean_b,
                             const IndexSystem& system, int samples, std::uint64_t seed,
                             double tol) {
    require_admissible(system);
    OrderReport report;
    Rng rng(seed);
    bool positive =
        mean_a.domain() == Domain::Positive || mean_b.domain() == Domain::Positive;
    double lo = positive ? 0.1 : -10.0;
    for (int s = 0; s < samples; ++s) {
        std::vector<double> v =
            rng.uniform_vector(static_cast<std::size_t>(system.sequences()), lo, 10.0);
        std::sort(v.begin(), v.end());
        double a = extend(mean_a, system, v).limit;
        double b = extend(mean_b, system, v).limit;
        if (a > b + tol) {
            report.holds = false;
            report.witness = v;
            report.limit_a = a;
            report.limit_b = b;
            return report;
        }
    }
    return report;
}

}  // namespace meanext
