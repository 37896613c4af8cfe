#pragma once

#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "meanext/index_system.hpp"
#include "meanext/means.hpp"

namespace meanext {

// Minimal ordered JSON value for output. Keys keep insertion order and every
// double is formatted with 17 significant digits, so identical inputs always
// produce byte-identical text (nlohmann's dump uses shortest-roundtrip
// formatting, which breaks that contract).
class Json {
  public:
    static Json object() { return Json(Object{}); }
    static Json array() { return Json(Array{}); }
    static Json number(double v) { return Json(v); }
    static Json integer(long v) { return Json(v); }
    static Json boolean(bool v) { return Json(v); }
    static Json string(std::string v) { return Json(std::move(v)); }

    Json& set(const std::string& key, Json value);
    Json& push(Json value);

    std::string dump() const;

  private:
    struct Object {
        std::vector<std::pair<std::string, Json>> members;
    };
    struct Array {
        std::vector<Json> items;
    };
    using Value = std::variant<Object, Array, double, long, bool, std::string>;

    explicit Json(Value v) : value_(std::make_shared<Value>(std::move(v))) {}

    void dump_to(std::string& out) const;

    std::shared_ptr<Value> value_;
};

std::string format_double(double v);  // %.17g

// Structured-text (JSON) forms.
//   mean:   {"family":"qa","generator":{"kind":"power","p":1.0},"arity":2,
//            "domain":"positive"}
//   system: {"n":2,"m":4,"tuples":[[1,2],[1,3],[2,4],[3,4]]}
Json mean_to_json(const MeanSpec& spec);
Json generator_to_json(const Generator& gen);
Json system_to_json(const IndexSystem& system);

MeanSpec mean_from_json_text(const std::string& text);
IndexSystem system_from_json_text(const std::string& text);

// Command-line mini-grammar: qa:power:<p>, qa:log, qa:exp:<t>,
// midrange:<arity>, sqrtpair:<arity>, pairwisesqrt:<arity>, nonsymquad4,
// weighted2:<w>, heronian2. Families that do not carry an arity take it from
// arity_hint; a missing hint where one is needed is a ParseError.
MeanSpec parse_mean_grammar(const std::string& text, std::optional<int> arity_hint = {});

}  // namespace meanext
