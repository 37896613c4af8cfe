#include "meanext/serialization.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace meanext {

Json& Json::set(const std::string& key, Json value) {
    std::get<Object>(*value_).members.emplace_back(key, std::move(value));
    return *this;
}

Json& Json::push(Json value) {
    std::get<Array>(*value_).items.push_back(std::move(value));
    return *this;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void Json::dump_to(std::string& out) const {
    struct Visitor {
        std::string& out;
        void operator()(const Object& o) const {
            out += '{';
            bool first = true;
            for (const auto& [key, value] : o.members) {
                if (!first) out += ',';
                first = false;
                out += '"';
                out += key;  // keys are plain identifiers, no escaping needed
                out += "\":";
                value.dump_to(out);
            }
            out += '}';
        }
        void operator()(const Array& a) const {
            out += '[';
            bool first = true;
            for (const auto& item : a.items) {
                if (!first) out += ',';
                first = false;
                item.dump_to(out);
            }
            out += ']';
        }
        void operator()(double v) const {
            if (!std::isfinite(v)) {
                out += "null";
                return;
            }
            out += format_double(v);
        }
        void operator()(long v) const { out += std::to_string(v); }
        void operator()(bool v) const { out += v ? "true" : "false"; }
        void operator()(const std::string& s) const {
            out += '"';
            for (char c : s) {
                if (c == '"' || c == '\\') out += '\\';
                out += c;
            }
            out += '"';
        }
    };
    std::visit(Visitor{out}, *value_);
}

std::string Json::dump() const {
    std::string out;
    dump_to(out);
    return out;
}

// ---------------------------------------------------------------------------
// Structured-text forms

Json generator_to_json(const Generator& gen) {
    Json j = Json::object();
    switch (gen.kind()) {
        case Generator::Kind::Power:
            j.set("kind", Json::string("power")).set("p", Json::number(gen.param()));
            break;
        case Generator::Kind::Log:
            j.set("kind", Json::string("log"));
            break;
        case Generator::Kind::Exp:
            j.set("kind", Json::string("exp")).set("t", Json::number(gen.param()));
            break;
        case Generator::Kind::Composed:
            j.set("kind", Json::string("composed"))
                .set("outer", generator_to_json(gen.outer()))
                .set("inner", generator_to_json(gen.inner()));
            break;
    }
    return j;
}

Json mean_to_json(const MeanSpec& spec) {
    Json j = Json::object();
    struct Visitor {
        Json& j;
        void operator()(const QuasiArithmetic& qa) const {
            j.set("family", Json::string("qa")).set("generator", generator_to_json(qa.gen));
        }
        void operator()(const MidRange&) const { j.set("family", Json::string("midrange")); }
        void operator()(const SqrtPairAvg&) const { j.set("family", Json::string("sqrtpair")); }
        void operator()(const PairwiseSqrtAvg&) const {
            j.set("family", Json::string("pairwisesqrt"));
        }
        void operator()(const NonSymQuad4&) const { j.set("family", Json::string("nonsymquad4")); }
        void operator()(const WeightedTwo& w) const {
            j.set("family", Json::string("weighted2")).set("w", Json::number(w.w));
        }
        void operator()(const Heronian2&) const { j.set("family", Json::string("heronian2")); }
    };
    std::visit(Visitor{j}, spec.family());
    j.set("arity", Json::integer(spec.arity()));
    j.set("domain", Json::string(spec.domain() == Domain::Positive ? "positive" : "all"));
    if (spec.conjugation()) j.set("conjugation", generator_to_json(*spec.conjugation()));
    return j;
}

Json system_to_json(const IndexSystem& system) {
    Json tuples = Json::array();
    for (const auto& t : system.tuples()) {
        Json row = Json::array();
        for (int x : t) row.push(Json::integer(x));
        tuples.push(std::move(row));
    }
    Json j = Json::object();
    j.set("n", Json::integer(system.arity()));
    j.set("m", Json::integer(system.sequences()));
    j.set("tuples", std::move(tuples));
    return j;
}

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON input");
    return j;
}

Generator generator_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") return Generator::power(j.at("p").get<double>());
    if (kind == "log") return Generator::log();
    if (kind == "exp") return Generator::exp(j.at("t").get<double>());
    if (kind == "composed") {
        return Generator::compose(generator_from_json(j.at("outer")),
                                  generator_from_json(j.at("inner")));
    }
    throw ParseError("unknown generator kind: " + kind);
}

MeanSpec mean_from_json(const json& j) {
    std::string family = j.at("family").get<std::string>();
    int arity = j.value("arity", 0);
    MeanSpec spec = [&] {
        if (family == "qa") {
            if (arity < 2) throw ParseError("qa means need an explicit arity >= 2");
            return MeanSpec::quasi_arithmetic(generator_from_json(j.at("generator")), arity);
        }
        if (family == "midrange") return MeanSpec::midrange(arity ? arity : 2);
        if (family == "sqrtpair") return MeanSpec::sqrt_pair_avg(arity ? arity : 3);
        if (family == "pairwisesqrt") return MeanSpec::pairwise_sqrt_avg(arity ? arity : 3);
        if (family == "nonsymquad4") return MeanSpec::nonsym_quad4();
        if (family == "weighted2") return MeanSpec::weighted_two(j.at("w").get<double>());
        if (family == "heronian2") return MeanSpec::heronian2();
        throw ParseError("unknown mean family: " + family);
    }();
    if (j.contains("conjugation")) {
        spec = conjugate(spec, generator_from_json(j.at("conjugation")));
    }
    return spec;
}

}  // namespace

MeanSpec mean_from_json_text(const std::string& text) {
    try {
        return mean_from_json(parse_or_throw(text));
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad mean description: ") + e.what());
    }
}

IndexSystem system_from_json_text(const std::string& text) {
    try {
        json j = parse_or_throw(text);
        int n = j.at("n").get<int>();
        std::vector<IndexTuple> tuples;
        for (const auto& row : j.at("tuples")) {
            tuples.push_back(row.get<IndexTuple>());
        }
        if (j.contains("m") && j.at("m").get<int>() != static_cast<int>(tuples.size())) {
            throw ParseError("field m does not match the number of tuples");
        }
        return IndexSystem(n, std::move(tuples));
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad system description: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Command-line mini-grammar

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_number(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw ParseError("");
        return v;
    } catch (...) {
        throw ParseError("expected a number for " + what + ", got '" + s + "'");
    }
}

int parse_arity(const std::string& s) {
    double v = parse_number(s, "arity");
    int a = static_cast<int>(v);
    if (a != v || a < 2) throw ParseError("arity must be an integer >= 2, got '" + s + "'");
    return a;
}

}  // namespace

MeanSpec parse_mean_grammar(const std::string& text, std::optional<int> arity_hint) {
    auto parts = split(text, ':');
    const std::string& family = parts[0];
    auto require_parts = [&](std::size_t count) {
        if (parts.size() != count) throw ParseError("malformed mean spec '" + text + "'");
    };
    auto hinted_arity = [&](const std::string& name) {
        if (!arity_hint) {
            throw ParseError(name + " needs an arity (from --arity or the surrounding command)");
        }
        return *arity_hint;
    };

    if (family == "qa") {
        if (parts.size() < 2) throw ParseError("qa spec needs a generator, e.g. qa:power:1");
        int arity = hinted_arity("qa:" + parts[1]);
        if (parts[1] == "power") {
            require_parts(3);
            return MeanSpec::quasi_arithmetic(Generator::power(parse_number(parts[2], "p")), arity);
        }
        if (parts[1] == "log") {
            require_parts(2);
            return MeanSpec::quasi_arithmetic(Generator::log(), arity);
        }
        if (parts[1] == "exp") {
            require_parts(3);
            return MeanSpec::quasi_arithmetic(Generator::exp(parse_number(parts[2], "t")), arity);
        }
        throw ParseError("unknown qa generator '" + parts[1] + "'");
    }
    if (family == "midrange") {
        require_parts(2);
        return MeanSpec::midrange(parse_arity(parts[1]));
    }
    if (family == "sqrtpair") {
        require_parts(2);
        return MeanSpec::sqrt_pair_avg(parse_arity(parts[1]));
    }
    if (family == "pairwisesqrt") {
        require_parts(2);
        return MeanSpec::pairwise_sqrt_avg(parse_arity(parts[1]));
    }
    if (family == "nonsymquad4") {
        require_parts(1);
        return MeanSpec::nonsym_quad4();
    }
    if (family == "weighted2") {
        require_parts(2);
        return MeanSpec::weighted_two(parse_number(parts[1], "w"));
    }
    if (family == "heronian2") {
        require_parts(1);
        return MeanSpec::heronian2();
    }
    throw ParseError("unknown mean family '" + family + "'");
}

}  // namespace meanext
