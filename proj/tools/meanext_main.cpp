// Command-line front end: every subcommand prints one JSON object on stdout.
// Exit codes: 0 success, 1 validation/usage error, 2 non-convergence,
// 3 repro failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "meanext/iteration.hpp"
#include "meanext/markov.hpp"
#include "meanext/repro.hpp"
#include "meanext/serialization.hpp"
#include "meanext/shrink_ops.hpp"
#include "meanext/symmetrize.hpp"

namespace {

using namespace meanext;

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw ParseError("");
        } catch (...) {
            throw ParseError("bad number '" + item + "' in --values");
        }
    }
    if (out.empty()) throw ParseError("--values must list at least one number");
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct SystemArgs {
    std::string inline_spec;  // auto:<n>:<m>
    std::string file;

    void attach(CLI::App* cmd) {
        auto* a = cmd->add_option("--system", inline_spec, "system as auto:<n>:<m>");
        auto* b = cmd->add_option("--system-file", file, "JSON file with {n, m, tuples}");
        a->excludes(b);
    }

    IndexSystem load() const {
        if (!file.empty()) return system_from_json_text(read_file(file));
        if (inline_spec.empty()) throw ParseError("need --system or --system-file");
        int n = 0, m = 0;
        if (std::sscanf(inline_spec.c_str(), "auto:%d:%d", &n, &m) != 2) {
            throw ParseError("--system expects auto:<n>:<m>, got '" + inline_spec + "'");
        }
        return construct_admissible(n, m);
    }
};

struct MeanArgs {
    std::string grammar;
    std::string file;
    int arity = 0;

    void attach(CLI::App* cmd) {
        auto* a = cmd->add_option("--mean", grammar, "mean spec, e.g. qa:power:1 or midrange:5");
        auto* b = cmd->add_option("--spec-file", file, "JSON file with the mean description");
        a->excludes(b);
        cmd->add_option("--arity", arity, "arity for specs that do not carry one");
    }

    MeanSpec load(std::optional<int> context_arity = {}) const {
        std::optional<int> hint = arity > 0 ? std::optional<int>(arity) : context_arity;
        if (!file.empty()) return mean_from_json_text(read_file(file));
        if (grammar.empty()) throw ParseError("need --mean or --spec-file");
        return parse_mean_grammar(grammar, hint);
    }
};

Json values_json(std::span<const double> v) {
    Json arr = Json::array();
    for (double x : v) arr.push(Json::number(x));
    return arr;
}

Json report_json(const ConvergenceReport& report) {
    Json j = Json::object();
    j.set("limit", Json::number(report.limit));
    j.set("iterations", Json::integer(report.iterations));
    j.set("final_spread", Json::number(report.final_spread));
    j.set("status", Json::string(report.status == ConvergenceStatus::Converged
                                     ? "converged"
                                     : "max-iterations-exceeded"));
    j.set("unsorted_warning", Json::boolean(report.unsorted_warning));
    if (report.trace) {
        Json trace = Json::array();
        for (const auto& state : *report.trace) {
            Json s = Json::object();
            s.set("step", Json::integer(state.step));
            s.set("values", values_json(state.values));
            trace.push(std::move(s));
        }
        j.set("trace", std::move(trace));
    }
    return j;
}

Json matrix_json(const SquareMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.size(); ++j) row.push(Json::number(m(i, j)));
        rows.push(std::move(row));
    }
    return rows;
}

int finish_report(const ConvergenceReport& report) {
    std::cout << report_json(report).dump() << "\n";
    return report.status == ConvergenceStatus::Converged ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"extend, shrink, compound and symmetrize means by coupled iteration"};
    app.require_subcommand(1);
    int exit_code = 0;

    // check-system
    {
        auto sys = std::make_shared<SystemArgs>();
        auto* cmd = app.add_subcommand("check-system", "verify admissibility properties (1)-(4)");
        sys->attach(cmd);
        cmd->callback([sys] {
            IndexSystem system = sys->load();
            auto verdict = check_admissible(system);
            Json j = Json::object();
            j.set("n", Json::integer(system.arity()));
            j.set("m", Json::integer(system.sequences()));
            j.set("admissible", Json::boolean(verdict.admissible));
            Json failed = Json::array();
            for (int p : verdict.failed_properties()) failed.push(Json::integer(p));
            j.set("failed_properties", std::move(failed));
            Json violations = Json::array();
            for (const auto& v : verdict.violations) {
                Json item = Json::object();
                item.set("property", Json::integer(v.property));
                item.set("detail", Json::string(v.detail));
                violations.push(std::move(item));
            }
            j.set("violations", std::move(violations));
            std::cout << j.dump() << "\n";
        });
    }

    // construct
    {
        auto n = std::make_shared<int>(0);
        auto m = std::make_shared<int>(0);
        auto* cmd = app.add_subcommand("construct", "build the recursive admissible system");
        cmd->add_option("--n", *n, "tuple arity")->required();
        cmd->add_option("--m", *m, "number of sequences")->required();
        cmd->callback([n, m] {
            std::cout << system_to_json(construct_admissible(*n, *m)).dump() << "\n";
        });
    }

    // enumerate
    {
        auto n = std::make_shared<int>(0);
        auto m = std::make_shared<int>(0);
        auto limit = std::make_shared<long>(1000);
        auto* cmd = app.add_subcommand("enumerate", "list admissible systems in lex order");
        cmd->add_option("--n", *n, "tuple arity")->required();
        cmd->add_option("--m", *m, "number of sequences")->required();
        cmd->add_option("--limit", *limit, "truncate after this many systems");
        cmd->callback([n, m, limit] {
            auto systems = enumerate_admissible(*n, *m, *limit);
            Json j = Json::object();
            j.set("n", Json::integer(*n));
            j.set("m", Json::integer(*m));
            j.set("count", Json::integer(static_cast<long>(systems.size())));
            j.set("truncated", Json::boolean(static_cast<long>(systems.size()) == *limit));
            Json arr = Json::array();
            for (const auto& s : systems) arr.push(system_to_json(s));
            j.set("systems", std::move(arr));
            std::cout << j.dump() << "\n";
        });
    }

    // extend
    {
        auto sys = std::make_shared<SystemArgs>();
        auto mean = std::make_shared<MeanArgs>();
        auto values = std::make_shared<std::string>();
        auto opt = std::make_shared<IterationOptions>();
        auto* cmd = app.add_subcommand("extend", "run the coupled sequences to their common limit");
        sys->attach(cmd);
        mean->attach(cmd);
        cmd->add_option("--values", *values, "comma-separated start values")->required();
        cmd->add_option("--tol", opt->tol, "convergence tolerance on the spread");
        cmd->add_option("--max-iter", opt->max_iter, "iteration ceiling");
        cmd->add_flag("--trace", opt->capture_trace, "include the first 64 states");
        cmd->callback([sys, mean, values, opt, &exit_code] {
            IndexSystem system = sys->load();
            MeanSpec spec = mean->load(system.arity());
            exit_code = finish_report(extend(spec, system, parse_values(*values), *opt));
        });
    }

    // iterate
    {
        auto sys = std::make_shared<SystemArgs>();
        auto mean = std::make_shared<MeanArgs>();
        auto values = std::make_shared<std::string>();
        auto k = std::make_shared<long>(1);
        auto no_sort = std::make_shared<bool>(false);
        auto* cmd = app.add_subcommand("iterate", "exact k-step image of the recursion");
        sys->attach(cmd);
        mean->attach(cmd);
        cmd->add_option("--values", *values, "comma-separated start values")->required();
        cmd->add_option("--k", *k, "number of steps")->required();
        cmd->add_flag("--no-sort", *no_sort, "keep the caller's value order");
        cmd->callback([sys, mean, values, k, no_sort] {
            IndexSystem system = sys->load();
            MeanSpec spec = mean->load(system.arity());
            auto state = iterate(spec, system, parse_values(*values), *k, !*no_sort);
            Json j = Json::object();
            j.set("step", Json::integer(state.step));
            j.set("values", values_json(state.values));
            std::cout << j.dump() << "\n";
        });
    }

    // shrink
    {
        auto mean = std::make_shared<MeanArgs>();
        auto values = std::make_shared<std::string>();
        auto n = std::make_shared<int>(0);
        auto opt = std::make_shared<IterationOptions>();
        auto* cmd = app.add_subcommand("shrink", "general shrinking via T_{m,n}");
        mean->attach(cmd);
        cmd->add_option("--values", *values, "comma-separated start values (length n)")->required();
        cmd->add_option("--n", *n, "target variable count (default: number of values)");
        cmd->add_option("--tol", opt->tol, "convergence tolerance");
        cmd->add_option("--max-iter", opt->max_iter, "iteration ceiling");
        cmd->add_flag("--trace", opt->capture_trace, "include the first 64 states");
        cmd->callback([mean, values, n, opt, &exit_code] {
            auto v = parse_values(*values);
            int target = *n > 0 ? *n : static_cast<int>(v.size());
            if (target != static_cast<int>(v.size())) {
                throw ParseError("--n must match the number of --values");
            }
            MeanSpec spec = mean->load();
            exit_code = finish_report(shrink_general(spec, target, v, *opt));
        });
    }

    // s1 / s2 / s3
    {
        auto mean = std::make_shared<MeanArgs>();
        auto a = std::make_shared<double>(0);
        auto b = std::make_shared<double>(0);
        auto tol = std::make_shared<double>(1e-12);
        auto grid = std::make_shared<int>(1024);
        auto* cmd = app.add_subcommand("s1", "leftmost fixed point of K(a,x,...,x,b)=x");
        mean->attach(cmd);
        cmd->add_option("--a", *a)->required();
        cmd->add_option("--b", *b)->required();
        cmd->add_option("--tol", *tol, "bracket width and residual tolerance");
        cmd->add_option("--grid", *grid, "scan subintervals");
        cmd->callback([mean, a, b, tol, grid] {
            auto result = shrink_s1(mean->load(), *a, *b, *tol, *grid);
            Json j = Json::object();
            j.set("x", Json::number(result.x));
            j.set("residual", Json::number(result.residual));
            Json bracket = Json::array();
            bracket.push(Json::number(result.bracket.first));
            bracket.push(Json::number(result.bracket.second));
            j.set("bracket", std::move(bracket));
            std::cout << j.dump() << "\n";
        });
    }
    {
        auto mean = std::make_shared<MeanArgs>();
        auto a = std::make_shared<double>(0);
        auto b = std::make_shared<double>(0);
        auto* cmd = app.add_subcommand("s2", "evaluate K(a,...,a,b,...,b)");
        mean->attach(cmd);
        cmd->add_option("--a", *a)->required();
        cmd->add_option("--b", *b)->required();
        cmd->callback([mean, a, b] {
            Json j = Json::object();
            j.set("value", Json::number(shrink_s2(mean->load(), *a, *b)));
            std::cout << j.dump() << "\n";
        });
    }
    {
        auto mean = std::make_shared<MeanArgs>();
        auto values = std::make_shared<std::string>();
        auto* cmd = app.add_subcommand("s3", "evaluate K on the duplicated argument list");
        mean->attach(cmd);
        cmd->add_option("--values", *values, "comma-separated values (length arity/2)")->required();
        cmd->callback([mean, values] {
            auto v = parse_values(*values);
            MeanSpec spec = mean->load(static_cast<int>(v.size()) * 2);
            Json j = Json::object();
            j.set("value", Json::number(shrink_s3(spec, v)));
            std::cout << j.dump() << "\n";
        });
    }

    // compound
    {
        auto sys = std::make_shared<SystemArgs>();
        auto means_csv = std::make_shared<std::string>();
        auto values = std::make_shared<std::string>();
        auto opt = std::make_shared<IterationOptions>();
        auto seed = std::make_shared<std::uint64_t>(0x5eedu);
        auto* cmd = app.add_subcommand("compound", "coupled iteration with one mean per row");
        sys->attach(cmd);
        cmd->add_option("--means", *means_csv, "comma-separated mean specs, one per row")
            ->required();
        cmd->add_option("--values", *values, "comma-separated start values")->required();
        cmd->add_option("--tol", opt->tol, "convergence tolerance");
        cmd->add_option("--max-iter", opt->max_iter, "iteration ceiling");
        cmd->add_option("--seed", *seed, "seed for the ordering check");
        cmd->add_flag("--trace", opt->capture_trace, "include the first 64 states");
        cmd->callback([sys, means_csv, values, opt, seed, &exit_code] {
            IndexSystem system = sys->load();
            std::vector<MeanSpec> means;
            std::stringstream ss(*means_csv);
            std::string item;
            while (std::getline(ss, item, ',')) {
                means.push_back(parse_mean_grammar(item, system.arity()));
            }
            exit_code =
                finish_report(compound(means, system, parse_values(*values), *opt, *seed));
        });
    }

    // symmetrize
    {
        auto mean = std::make_shared<MeanArgs>();
        auto a = std::make_shared<double>(0);
        auto b = std::make_shared<double>(0);
        auto tol = std::make_shared<double>(1e-12);
        auto max_iter = std::make_shared<long>(1'000'000);
        auto* cmd = app.add_subcommand("symmetrize", "min/max double sequence of a 2-mean");
        mean->attach(cmd);
        cmd->add_option("--a", *a)->required();
        cmd->add_option("--b", *b)->required();
        cmd->add_option("--tol", *tol, "gap tolerance");
        cmd->add_option("--max-iter", *max_iter, "iteration ceiling");
        cmd->callback([mean, a, b, tol, max_iter] {
            auto trace = symmetrize(mean->load(2), *a, *b, *tol, *max_iter);
            Json j = Json::object();
            j.set("limit", Json::number(trace.limit));
            j.set("iterations", Json::integer(trace.iterations));
            Json pairs = Json::array();
            for (const auto& [x, y] : trace.pairs) {
                Json p = Json::array();
                p.push(Json::number(x));
                p.push(Json::number(y));
                pairs.push(std::move(p));
            }
            j.set("pairs", std::move(pairs));
            std::cout << j.dump() << "\n";
        });
    }

    // markov
    {
        auto sys = std::make_shared<SystemArgs>();
        auto power = std::make_shared<long>(0);
        auto* cmd = app.add_subcommand("markov", "transition matrix and chain properties");
        sys->attach(cmd);
        cmd->add_option("--power", *power, "also report M^k and its distance from uniform");
        cmd->callback([sys, power] {
            IndexSystem system = sys->load();
            SquareMatrix m = transition_matrix(system);
            auto verdict = check_chain(m);
            Json j = Json::object();
            j.set("n", Json::integer(system.arity()));
            j.set("m", Json::integer(system.sequences()));
            j.set("matrix", matrix_json(m));
            j.set("doubly_stochastic", Json::boolean(verdict.doubly_stochastic));
            j.set("irreducible", Json::boolean(verdict.irreducible));
            j.set("aperiodic", Json::boolean(verdict.aperiodic));
            if (verdict.period_witness) {
                j.set("period", Json::integer(*verdict.period_witness));
            }
            if (*power >= 1) {
                j.set("power", Json::integer(*power));
                j.set("matrix_power", matrix_json(matrix_power(m, *power)));
                j.set("uniform_limit_error", Json::number(uniform_limit_error(m, *power)));
            }
            std::cout << j.dump() << "\n";
        });
    }

    // repro
    {
        auto* cmd = app.add_subcommand("repro", "replay every built-in numeric checkpoint");
        cmd->callback([&exit_code] {
            auto cases = repro_suite();
            long failed = 0;
            Json arr = Json::array();
            for (const auto& c : cases) {
                if (!c.pass) ++failed;
                Json item = Json::object();
                item.set("id", Json::string(c.id));
                item.set("description", Json::string(c.description));
                item.set("expected", Json::string(c.expected));
                item.set("computed", Json::number(c.computed));
                item.set("tolerance", Json::number(c.tolerance));
                item.set("pass", Json::boolean(c.pass));
                arr.push(std::move(item));
            }
            Json j = Json::object();
            j.set("passed", Json::integer(static_cast<long>(cases.size()) - failed));
            j.set("failed", Json::integer(failed));
            j.set("cases", std::move(arr));
            std::cout << j.dump() << "\n";
            if (failed > 0) exit_code = 3;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
