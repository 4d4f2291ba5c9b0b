#include "pnorm/source.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pnorm/constructions.hpp"
#include "pnorm/error.hpp"

namespace pnorm {

namespace {

Error bad_token(const std::string& tok, const std::string& why) {
    return Error("bad token \"" + tok + "\" in function spec: " + why);
}

std::int64_t to_int(const std::string& tok, std::string_view s) {
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw bad_token(tok, "expected an integer");
    return v;
}

int to_small(const std::string& tok, std::string_view s) {
    const auto v = to_int(tok, s);
    if (v < 0 || v > 1'000'000) throw bad_token(tok, "value out of range");
    return int(v);
}

}  // namespace

PAryFunction parse_function_spec(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::string> tokens;
    for (std::string t; in >> t;) tokens.push_back(t);
    if (tokens.empty()) throw Error("empty function spec");

    static const std::map<std::string, std::vector<std::string>> kinds{
        {"trace", {"p", "n", "term"}},  {"zero", {"p", "n"}},          {"const", {"p", "n", "c"}},
        {"affine", {"p", "n", "v", "c"}}, {"cm", {"p", "n", "k", "coeff"}}, {"product", {"p", "n", "alpha", "beta"}},
    };
    std::string kind = "trace";
    std::size_t first = 0;
    if (tokens[0].find('=') == std::string::npos) {
        if (!kinds.count(tokens[0])) throw bad_token(tokens[0], "unknown function kind");
        kind = tokens[0];
        first = 1;
    }
    const auto& allowed = kinds.at(kind);

    std::map<std::string, std::pair<std::string, std::int64_t>> values;
    std::vector<TraceTerm> terms;
    for (std::size_t i = first; i < tokens.size(); ++i) {
        const auto& tok = tokens[i];
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == tok.size())
            throw bad_token(tok, "expected key=value");
        const std::string key = tok.substr(0, eq);
        const std::string_view val = std::string_view(tok).substr(eq + 1);
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw bad_token(tok, "key \"" + key + "\" not valid for kind " + kind);
        if (key == "term") {
            const auto colon = val.find(':');
            if (colon == std::string_view::npos) throw bad_token(tok, "term needs coeff_exp:mono_exp");
            terms.push_back({to_int(tok, val.substr(0, colon)), to_int(tok, val.substr(colon + 1))});
            continue;
        }
        if (values.count(key)) throw bad_token(tok, "duplicate key");
        values[key] = {tok, to_int(tok, val)};
    }

    auto get = [&](const std::string& key) -> std::int64_t {
        auto it = values.find(key);
        if (it == values.end()) throw Error("function spec of kind " + kind + " is missing " + key + "=");
        return it->second.second;
    };
    auto small = [&](const std::string& key) {
        get(key);
        const auto& tok = values.at(key).first;
        return to_small(tok, tok.substr(key.size() + 1));
    };

    if (kind == "cm") {
        if (values.count("p") && get("p") != 3) throw bad_token(values.at("p").first, "Coulter-Matthews needs p=3");
        return coulter_matthews(small("n"), small("k"), get("coeff"));
    }
    const int p = small("p"), n = small("n");
    if (kind == "zero") return PAryFunction::zero(p, n);
    if (kind == "const") return PAryFunction::constant(p, n, small("c"));
    if (kind == "affine") return PAryFunction::affine(p, n, Point(small("v")), small("c"));
    if (!ExtField::has_conway(p, n))
        throw Error("no field table for p=" + std::to_string(p) + ", n=" + std::to_string(n));
    const auto field = ExtField::conway(p, n);
    if (kind == "product") return product_construction(field, get("alpha"), get("beta"));
    if (terms.empty()) throw Error("trace spec needs at least one term=a:e");
    return from_trace_spec({field, terms});
}

PAryFunction resolve_source(std::string_view source) {
    auto starts = [&](std::string_view prefix) { return source.substr(0, prefix.size()) == prefix; };
    if (starts("fixture:")) return build_fixture(source.substr(8));
    if (starts("spec:")) return parse_function_spec(source.substr(5));
    if (starts("file:")) return from_table_file(std::string(source.substr(5)));
    for (const auto& fx : fixtures())
        if (fx.name == source) return build_fixture(source);
    throw Error("cannot resolve function source \"" + std::string(source) +
                "\" (use fixture:NAME, spec:TEXT or file:PATH)");
}

}  // namespace pnorm
