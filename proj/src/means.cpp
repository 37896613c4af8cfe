#include "meanext/means.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "meanext/rng.hpp"

namespace meanext {

bool domain_contains(Domain d, double x) {
    if (!std::isfinite(x)) return false;
    return d == Domain::AllReals || x > 0.0;
}

// ---------------------------------------------------------------------------
// Generator

Generator Generator::power(double p) {
    if (!std::isfinite(p)) throw DomainViolation("power generator: exponent must be finite");
    if (p == 0.0) return log();
    Domain d = (p == 1.0) ? Domain::AllReals : Domain::Positive;
    return Generator(Kind::Power, p, d);
}

Generator Generator::log() { return Generator(Kind::Log, 0.0, Domain::Positive); }

Generator Generator::exp(double t) {
    if (t == 0.0 || !std::isfinite(t)) throw DomainViolation("exp generator: t must be nonzero");
    return Generator(Kind::Exp, t, Domain::AllReals);
}

Generator Generator::compose(const Generator& outer, const Generator& inner) {
    if (inner.is_identity()) return outer;
    if (outer.is_identity()) return inner;
    // The composite is usable only where inner's image fits outer's domain.
    if (outer.domain() == Domain::Positive && !inner.image_positive()) {
        throw DomainViolation("compose: " + inner.describe() + " does not map into the domain of " +
                              outer.describe());
    }
    Generator g(Kind::Composed, 0.0, inner.domain());
    g.outer_ = std::make_shared<const Generator>(outer);
    g.inner_ = std::make_shared<const Generator>(inner);
    return g;
}

bool Generator::image_positive() const {
    switch (kind_) {
        case Kind::Power:
            // x^p on the positive domain stays positive; the identity's image
            // is whatever comes in.
            return param_ != 1.0;
        case Kind::Log:
            return false;
        case Kind::Exp:
            return true;
        case Kind::Composed:
            return outer_->image_positive() || (outer_->is_identity() && inner_->image_positive());
    }
    return false;
}

double Generator::apply(double x) const {
    switch (kind_) {
        case Kind::Power:
            return param_ == 1.0 ? x : std::pow(x, param_);
        case Kind::Log:
            return std::log(x);
        case Kind::Exp:
            return std::exp(param_ * x);
        case Kind::Composed:
            return outer_->apply(inner_->apply(x));
    }
    return x;
}

double Generator::invert(double y) const {
    switch (kind_) {
        case Kind::Power:
            return param_ == 1.0 ? y : std::pow(y, 1.0 / param_);
        case Kind::Log:
            return std::exp(y);
        case Kind::Exp:
            return std::log(y) / param_;
        case Kind::Composed:
            return inner_->invert(outer_->invert(y));
    }
    return y;
}

std::string Generator::describe() const {
    switch (kind_) {
        case Kind::Power:
            return "power:" + std::to_string(param_);
        case Kind::Log:
            return "log";
        case Kind::Exp:
            return "exp:" + std::to_string(param_);
        case Kind::Composed:
            return outer_->describe() + "∘" + inner_->describe();
    }
    return "?";
}

// ---------------------------------------------------------------------------
// MeanSpec factories

MeanSpec MeanSpec::quasi_arithmetic(Generator gen, int arity) {
    if (arity < 2) throw ArityMismatch("quasi-arithmetic mean requires arity >= 2");
    Domain d = gen.domain();
    return MeanSpec(QuasiArithmetic{std::move(gen)}, arity, d);
}

MeanSpec MeanSpec::midrange(int arity) {
    if (arity < 2) throw ArityMismatch("midrange requires arity >= 2");
    return MeanSpec(MidRange{}, arity, Domain::AllReals);
}

MeanSpec MeanSpec::sqrt_pair_avg(int arity) {
    if (arity != 3 && arity != 4) throw ArityMismatch("sqrtpair is defined for arity 3 or 4");
    return MeanSpec(SqrtPairAvg{}, arity, Domain::Positive);
}

MeanSpec MeanSpec::pairwise_sqrt_avg(int arity) {
    if (arity != 3 && arity != 4) throw ArityMismatch("pairwisesqrt is defined for arity 3 or 4");
    return MeanSpec(PairwiseSqrtAvg{}, arity, Domain::Positive);
}

MeanSpec MeanSpec::nonsym_quad4() { return MeanSpec(NonSymQuad4{}, 4, Domain::Positive); }

MeanSpec MeanSpec::weighted_two(double w) {
    if (!(w > 0.0 && w < 1.0)) throw DomainViolation("weighted2 requires w in (0,1)");
    return MeanSpec(WeightedTwo{w}, 2, Domain::AllReals);
}

MeanSpec MeanSpec::heronian2() { return MeanSpec(Heronian2{}, 2, Domain::Positive); }

std::string MeanSpec::describe() const {
    struct Visitor {
        std::string operator()(const QuasiArithmetic& qa) const { return "qa(" + qa.gen.describe() + ")"; }
        std::string operator()(const MidRange&) const { return "midrange"; }
        std::string operator()(const SqrtPairAvg&) const { return "sqrtpair"; }
        std::string operator()(const PairwiseSqrtAvg&) const { return "pairwisesqrt"; }
        std::string operator()(const NonSymQuad4&) const { return "nonsymquad4"; }
        std::string operator()(const WeightedTwo& w) const {
            return "weighted2(" + std::to_string(w.w) + ")";
        }
        std::string operator()(const Heronian2&) const { return "heronian2"; }
    };
    std::string s = std::visit(Visitor{}, family_) + ":" + std::to_string(arity_);
    if (conjugation_) s += " conj " + conjugation_->describe();
    return s;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double eval_family(const MeanFamily& family, std::span<const double> v) {
    struct Visitor {
        std::span<const double> v;

        double operator()(const QuasiArithmetic& qa) const {
            double s = 0.0;
            for (double x : v) s += qa.gen.apply(x);
            return qa.gen.invert(s / static_cast<double>(v.size()));
        }
        double operator()(const MidRange&) const {
            auto [mn, mx] = std::minmax_element(v.begin(), v.end());
            return (*mn + *mx) / 2.0;
        }
        double operator()(const SqrtPairAvg&) const {
            double s = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i)
                for (std::size_t j = i + 1; j < v.size(); ++j) s += v[i] * v[j];
            double pairs = static_cast<double>(v.size() * (v.size() - 1) / 2);
            return std::sqrt(s / pairs);
        }
        double operator()(const PairwiseSqrtAvg&) const {
            double s = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i)
                for (std::size_t j = i + 1; j < v.size(); ++j) s += std::sqrt(v[i] * v[j]);
            double pairs = static_cast<double>(v.size() * (v.size() - 1) / 2);
            return s / pairs;
        }
        double operator()(const NonSymQuad4&) const {
            return std::sqrt((v[0] * v[1] + v[0] * v[2] + v[1] * v[3] + v[2] * v[3]) / 4.0);
        }
        double operator()(const WeightedTwo& wt) const { return wt.w * v[0] + (1.0 - wt.w) * v[1]; }
        double operator()(const Heronian2&) const {
            return (v[0] + std::sqrt(v[0] * v[1]) + v[1]) / 3.0;
        }
    };
    return std::visit(Visitor{v}, family);
}

}  // namespace

double eval_mean(const MeanSpec& spec, std::span<const double> values) {
    if (static_cast<int>(values.size()) != spec.arity()) {
        throw ArityMismatch("eval_mean: got " + std::to_string(values.size()) + " values for " +
                            spec.describe());
    }
    for (double x : values) {
        if (!domain_contains(spec.domain(), x)) {
            throw DomainViolation("eval_mean: value " + std::to_string(x) +
                                  " outside the domain of " + spec.describe());
        }
    }
    if (!spec.conjugation()) return eval_family(spec.family(), values);

    const Generator& f = *spec.conjugation();
    std::vector<double> mapped(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) mapped[i] = f.apply(values[i]);
    return f.invert(eval_family(spec.family(), mapped));
}

MeanSpec conjugate(const MeanSpec& spec, const Generator& gen) {
    if (gen.is_identity() && !spec.conjugation()) return spec;

    if (const auto* qa = std::get_if<QuasiArithmetic>(&spec.family())) {
        return MeanSpec::quasi_arithmetic(Generator::compose(qa->gen, gen), spec.arity());
    }
    if (spec.domain() == Domain::Positive && !gen.image_positive() && !gen.is_identity()) {
        throw DomainViolation("conjugate: image of " + gen.describe() +
                              " leaves the domain of " + spec.describe());
    }
    MeanSpec result = spec;
    result.conjugation_ =
        spec.conjugation() ? Generator::compose(*spec.conjugation(), gen) : gen;
    result.domain_ = gen.is_identity() ? spec.domain() : gen.domain();
    return result;
}

bool is_symmetric(const MeanSpec& spec) {
    struct Visitor {
        bool operator()(const QuasiArithmetic&) const { return true; }
        bool operator()(const MidRange&) const { return true; }
        bool operator()(const SqrtPairAvg&) const { return true; }
        bool operator()(const PairwiseSqrtAvg&) const { return true; }
        bool operator()(const NonSymQuad4&) const { return false; }
        bool operator()(const WeightedTwo& w) const { return w.w == 0.5; }
        bool operator()(const Heronian2&) const { return true; }
    };
    return std::visit(Visitor{}, spec.family());
}

// ---------------------------------------------------------------------------
// Axiom and roundness checks

namespace {

std::pair<double, double> sample_range(Domain d) {
    return d == Domain::Positive ? std::pair{0.1, 10.0} : std::pair{-10.0, 10.0};
}

bool all_equal(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

}  // namespace

AxiomReport check_axioms(const MeanSpec& spec, int sample_count, std::uint64_t seed) {
    AxiomReport report;
    Rng rng(seed);
    auto [lo, hi] = sample_range(spec.domain());
    const int n = spec.arity();

    for (int s = 0; s < sample_count; ++s) {
        std::vector<double> v = rng.uniform_vector(static_cast<std::size_t>(n), lo, hi);
        double value = eval_mean(spec, v);

        if (report.strictly_internal && !all_equal(v)) {
            auto [mn, mx] = std::minmax_element(v.begin(), v.end());
            if (!(*mn < value && value < *mx)) {
                report.strictly_internal = false;
                report.internality_witness = v;
            }
        }

        if (report.monotone) {
            std::vector<double> w(v);
            for (double& x : w) x += rng.uniform(0.0, 2.0);
            double bumped = eval_mean(spec, w);
            double slack = 1e-12 * std::max(1.0, std::abs(value));
            if (bumped < value - slack) {
                report.monotone = false;
                report.monotonicity_witness = {v, w};
            }
        }

        if (report.symmetric && n >= 2) {
            std::vector<double> p(v);
            do {
                rng.shuffle(p);
            } while (p == v && !all_equal(v));
            double permuted = eval_mean(spec, p);
            double slack = 1e-12 * std::max(1.0, std::abs(value));
            if (std::abs(permuted - value) > slack) {
                report.symmetric = false;
                report.symmetry_witness = {v, p};
            }
        }
    }
    return report;
}

RoundReport check_round(const MeanSpec& spec, std::span<const std::pair<double, double>> grid,
                        double tol) {
    if (spec.arity() != 2) throw ArityMismatch("check_round requires a 2-variable mean");
    RoundReport report;
    for (const auto& [a, b] : grid) {
        if (!(a < b)) throw DomainViolation("check_round: grid pairs must satisfy a < b");
        double k = eval_mean(spec, std::array{a, b});
        double ak = eval_mean(spec, std::array{a, k});
        double kb = eval_mean(spec, std::array{k, b});
        double residual = std::abs(eval_mean(spec, std::array{ak, kb}) - k);
        if (residual > report.max_residual) {
            report.max_residual = residual;
            report.worst_pair = {a, b};
        }
    }
    report.is_round = report.max_residual <= tol;
    return report;
}

std::vector<std::pair<double, double>> grid_pairs(double lo, double hi, int steps) {
    std::vector<double> pts(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        pts[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
    }
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < steps; ++i)
        for (int j = i + 1; j < steps; ++j) pairs.emplace_back(pts[i], pts[j]);
    return pairs;
}

}  // namespace meanext
