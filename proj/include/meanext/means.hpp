#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "meanext/errors.hpp"

namespace meanext {

enum class Domain { Positive, AllReals };

bool domain_contains(Domain d, double x);

// A strictly monotone continuous function f with exact inverse, used to build
// quasi-arithmetic means f^{-1}(avg f(x_i)) and to conjugate arbitrary means.
//
// Kinds: power(p) is x^p (p=1 is the identity, p=0 aliases log so the power
// family is continuous in p at the API level), log is ln, exp(t) is e^{tx},
// and composed(g,f) is g∘f as produced by repeated conjugation.
class Generator {
  public:
    enum class Kind { Power, Log, Exp, Composed };

    static Generator power(double p);
    static Generator log();
    static Generator exp(double t);  // t != 0
    static Generator compose(const Generator& outer, const Generator& inner);

    double apply(double x) const;
    double invert(double y) const;

    Domain domain() const { return domain_; }
    Kind kind() const { return kind_; }
    double param() const { return param_; }  // p for Power, t for Exp
    const Generator& outer() const { return *outer_; }
    const Generator& inner() const { return *inner_; }

    bool is_identity() const { return kind_ == Kind::Power && param_ == 1.0; }
    // True when the image is guaranteed to lie in (0, inf).
    bool image_positive() const;

    std::string describe() const;

  private:
    Generator(Kind kind, double param, Domain domain)
        : kind_(kind), param_(param), domain_(domain) {}

    Kind kind_;
    double param_ = 0.0;
    Domain domain_;
    std::shared_ptr<const Generator> outer_;  // Composed only
    std::shared_ptr<const Generator> inner_;
};

struct QuasiArithmetic {
    Generator gen;
};
struct MidRange {};
struct SqrtPairAvg {};
struct PairwiseSqrtAvg {};
struct NonSymQuad4 {};
struct WeightedTwo {
    double w;  // in (0,1); value = w*a + (1-w)*b
};
struct Heronian2 {};

using MeanFamily = std::variant<QuasiArithmetic, MidRange, SqrtPairAvg, PairwiseSqrtAvg,
                                NonSymQuad4, WeightedTwo, Heronian2>;

// Declarative description of a mean: family, arity, domain, plus an optional
// conjugating generator for non-quasi-arithmetic families (quasi-arithmetic
// conjugates fold into the generator instead).
class MeanSpec {
  public:
    static MeanSpec quasi_arithmetic(Generator gen, int arity);
    static MeanSpec arithmetic(int arity) { return quasi_arithmetic(Generator::power(1), arity); }
    static MeanSpec geometric(int arity) { return quasi_arithmetic(Generator::log(), arity); }
    static MeanSpec midrange(int arity);
    static MeanSpec sqrt_pair_avg(int arity);      // arity 3 or 4
    static MeanSpec pairwise_sqrt_avg(int arity);  // arity 3 or 4
    static MeanSpec nonsym_quad4();
    static MeanSpec weighted_two(double w);
    static MeanSpec heronian2();

    const MeanFamily& family() const { return family_; }
    int arity() const { return arity_; }
    Domain domain() const { return domain_; }
    const std::optional<Generator>& conjugation() const { return conjugation_; }

    std::string describe() const;

  private:
    MeanSpec(MeanFamily family, int arity, Domain domain)
        : family_(std::move(family)), arity_(arity), domain_(domain) {}

    MeanFamily family_;
    int arity_;
    Domain domain_;
    std::optional<Generator> conjugation_;

    friend MeanSpec conjugate(const MeanSpec&, const Generator&);
};

// Evaluates the mean. Throws ArityMismatch if values.size() != arity and
// DomainViolation if any value is outside the spec's domain.
double eval_mean(const MeanSpec& spec, std::span<const double> values);

// f-conjugate: a mean evaluating to f^{-1}(K(f(a_1),...,f(a_n))).
MeanSpec conjugate(const MeanSpec& spec, const Generator& gen);

bool is_symmetric(const MeanSpec& spec);

struct AxiomReport {
    bool strictly_internal = true;
    bool monotone = true;
    bool symmetric = true;
    std::optional<std::vector<double>> internality_witness;
    std::optional<std::pair<std::vector<double>, std::vector<double>>> monotonicity_witness;
    std::optional<std::pair<std::vector<double>, std::vector<double>>> symmetry_witness;
};

// Sampled verification of the mean axioms; deterministic for a given seed.
// Continuity is not probed numerically (catalog families are closed-form).
AxiomReport check_axioms(const MeanSpec& spec, int sample_count, std::uint64_t seed);

struct RoundReport {
    bool is_round = false;
    double max_residual = 0.0;
    std::pair<double, double> worst_pair{0.0, 0.0};
};

// Checks the functional equation (a∘k)∘(k∘b) = k, k = a∘b, over a grid of
// pairs a < b. is_round iff the max residual stays within tol.
RoundReport check_round(const MeanSpec& spec, std::span<const std::pair<double, double>> grid,
                        double tol);

// All pairs (x_i, x_j), i < j, from a uniform lattice of `steps` points.
std::vector<std::pair<double, double>> grid_pairs(double lo, double hi, int steps);

}  // namespace meanext
