// pnorm: command-line front end for the normality engine.
//
// Exit codes: 0 success or verdict normal, 3 verdict not_normal,
// 1 usage error, 2 internal inconsistency.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pnorm/constructions.hpp"
#include "pnorm/error.hpp"
#include "pnorm/normality.hpp"
#include "pnorm/source.hpp"
#include "pnorm/spectrum.hpp"

namespace {

using nlohmann::ordered_json;
using namespace pnorm;

constexpr int kExitNotNormal = 3;
constexpr int kExitUsage = 1;
constexpr int kExitInternal = 2;

struct Output {
    std::string path;
    std::string format = "json";

    // Writes the document to the file, or to stdout when no path is set.
    void emit(const std::string& doc) const {
        if (path.empty() || path == "-") {
            std::cout << doc;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot open " + path + " for writing");
        out << doc;
        if (!out) throw Error("write to " + path + " failed");
    }
    bool to_file() const { return !path.empty() && path != "-"; }
};

void add_output(CLI::App* cmd, Output& out, bool with_format) {
    cmd->add_option("--out,-o", out.path, "Output path (default: stdout)");
    if (with_format)
        cmd->add_option("--format", out.format, "Report format")->check(CLI::IsMember({"json", "text"}));
}

std::string table_text(const PAryFunction& f) {
    std::ostringstream os;
    write_table(os, f);
    return os.str();
}

std::string classify_doc(const PAryFunction& f, const std::string& format) {
    const auto v = classify_regularity(f);
    const bool bent = v.kind != RegularityKind::not_bent;
    if (format == "text") {
        std::ostringstream os;
        os << "F_" << f.p() << "^" << f.n() << ": " << (bent ? "bent" : "not bent");
        if (bent) {
            os << ", " << to_string(v.kind);
            if (v.zeta) os << ", zeta=" << to_string(*v.zeta);
            os << ", dual " << (v.dual ? "available" : "not available");
        }
        os << ", degree " << algebraic_degree(f) << '\n';
        return os.str();
    }
    ordered_json j;
    j["p"] = f.p();
    j["n"] = f.n();
    j["bent"] = bent;
    j["kind"] = std::string(to_string(v.kind));
    j["zeta"] = v.zeta ? ordered_json(std::string(to_string(*v.zeta))) : ordered_json(nullptr);
    j["dual_available"] = v.dual.has_value();
    j["algebraic_degree"] = algebraic_degree(f);
    if (bent) {
        int plus = 0;
        for (auto z : v.signs) plus += (z == Zeta::plus_one || z == Zeta::plus_i);
        j["sign_counts"] = {{"plus", plus}, {"minus", int(v.signs.size()) - plus}};
    }
    return j.dump(2) + "\n";
}

std::string bounds_doc(int p, int n, int k, const std::string& kind, const std::string& format) {
    const auto e = nonnormal_existence(p, n, k);
    std::optional<RegularityKind> rk;
    if (kind == "regular") rk = RegularityKind::regular;
    if (kind == "weakly_regular") rk = RegularityKind::weakly_regular;
    if (kind == "non_weakly_regular") rk = RegularityKind::non_weakly_regular;
    const int cap = normality_cap(p, n, rk);
    const auto subspaces = gaussian_binomial(p, n, k);
    const auto flats = affine_flat_count(p, n, k);
    const auto cubic = cubic_density_exponent(p, n, k);
    if (format == "text") {
        std::ostringstream os;
        os << "p=" << p << " n=" << n << " k=" << k << '\n'
           << "  exponent E = " << e.exponent << ", non-" << k << "-normal functions exist: " << (e.exists ? "yes" : "no")
           << '\n'
           << "  normality cap for " << kind << " bent: " << cap << '\n'
           << "  " << k << "-subspaces: " << subspaces << ", " << k << "-flats: " << flats << '\n'
           << "  cubic density exponent: " << cubic << '\n';
        return os.str();
    }
    ordered_json j;
    j["p"] = p;
    j["n"] = n;
    j["k"] = k;
    j["exponent"] = e.exponent.str();
    j["nonnormal_exists"] = e.exists;
    j["kind"] = kind;
    j["normality_cap"] = cap;
    j["subspaces"] = subspaces.str();
    j["flats"] = flats.str();
    j["cubic_density_exponent"] = cubic;
    return j.dump(2) + "\n";
}

std::string fixtures_doc(const std::string& format) {
    if (format == "text") {
        std::ostringstream os;
        for (const auto& fx : fixtures()) os << fx.name << "  " << fx.formula << '\n';
        return os.str();
    }
    ordered_json j = ordered_json::array();
    for (const auto& fx : fixtures()) j.push_back({{"name", fx.name}, {"formula", fx.formula}});
    return j.dump(2) + "\n";
}

// Prints the report, and a short summary on stdout when the report goes to a file.
void emit_report(const NormalityReport& r, const Output& out, bool timing) {
    const auto doc = out.format == "text" ? report_to_text(r) : report_to_json(r, timing);
    out.emit(doc);
    if (out.to_file()) std::cout << report_to_text(r);
}

int run(int argc, char** argv) {
    CLI::App app{"Normality testing and spectral analysis of p-ary functions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "pnorm 0.1.0");

    const std::string source_help = "Function source: fixture:NAME, spec:TEXT or file:PATH";
    std::string source;
    Output out;
    int k = 0;
    std::string mode = "constant";
    NormalityOptions opts;
    bool timing = false;

    auto* construct = app.add_subcommand("construct", "Write the truth table of a function");
    construct->add_option("source", source, source_help)->required();
    add_output(construct, out, false);

    auto* classify = app.add_subcommand("classify", "Bentness and regularity");
    classify->add_option("source", source, source_help)->required();
    add_output(classify, out, true);

    auto* spectrum = app.add_subcommand("spectrum", "Dump the exact Walsh spectrum");
    spectrum->add_option("source", source, source_help)->required();
    add_output(spectrum, out, false);

    auto add_search_flags = [&](CLI::App* cmd) {
        cmd->add_option("source", source, source_help)->required();
        cmd->add_option("--mode", mode, "constant (k-normal) or affine (weakly k-normal)")
            ->check(CLI::IsMember({"constant", "affine"}));
        cmd->add_option("--workers", opts.workers, "Worker threads (0 = all cores)");
        cmd->add_option("--witness-cap", opts.witness_cap, "Witnesses listed in the report");
        cmd->add_flag("--timing", timing, "Include wall time in the JSON report");
        cmd->add_flag("--rescan-cosets", opts.rescan_cosets, "Rebuild constant cosets by a full pass at every level");
        add_output(cmd, out, true);
    };

    auto* normality = app.add_subcommand("normality", "Test (weak) k-normality");
    add_search_flags(normality);
    normality->add_option("--k", k, "Flat dimension")->required();
    normality->add_option("--start-dim", opts.start_dim, "Dimension of the fully enumerated base level");
    normality->add_flag("--bent-shortcut", opts.bent_shortcut,
                        "Answer not_normal for bent inputs with k > n/2 without searching");

    auto* maxnorm = app.add_subcommand("max-normality", "Largest k with a witness");
    add_search_flags(maxnorm);

    int bp = 0, bn = 0, bk = 0;
    std::string kind = "unknown";
    auto* bounds = app.add_subcommand("bounds", "Counting bounds and normality caps");
    bounds->add_option("p", bp)->required();
    bounds->add_option("n", bn)->required();
    bounds->add_option("k", bk)->required();
    bounds->add_option("--kind", kind, "Regularity kind for the cap")
        ->check(CLI::IsMember({"unknown", "regular", "weakly_regular", "non_weakly_regular"}));
    add_output(bounds, out, true);

    auto* extend = app.add_subcommand("extend", "Write g(x, y, z) = f(x) + yz");
    extend->add_option("source", source, source_help)->required();
    add_output(extend, out, false);

    auto* list = app.add_subcommand("fixtures", "List named fixtures");
    add_output(list, out, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    if (*construct) {
        out.emit(table_text(resolve_source(source)));
    } else if (*classify) {
        out.emit(classify_doc(resolve_source(source), out.format));
    } else if (*spectrum) {
        std::ostringstream os;
        write_spectrum(os, resolve_source(source));
        out.emit(os.str());
    } else if (*normality) {
        const auto f = resolve_source(source);
        const auto r = test_normality(f, k, parse_mode(mode), opts);
        emit_report(r, out, timing);
        return r.normal ? 0 : kExitNotNormal;
    } else if (*maxnorm) {
        const auto f = resolve_source(source);
        const auto m = max_normality(f, parse_mode(mode), opts);
        if (out.format == "text") {
            std::ostringstream os;
            os << "k_max=" << m.k_max << '\n';
            if (m.report) os << report_to_text(*m.report);
            out.emit(os.str());
        } else {
            ordered_json j;
            j["k_max"] = m.k_max;
            j["report"] = m.report ? ordered_json::parse(report_to_json(*m.report, timing)) : ordered_json(nullptr);
            out.emit(j.dump(2) + "\n");
        }
        if (out.to_file()) std::cout << "k_max=" << m.k_max << '\n';
        return m.k_max > 0 ? 0 : kExitNotNormal;
    } else if (*bounds) {
        out.emit(bounds_doc(bp, bn, bk, kind, out.format));
    } else if (*extend) {
        out.emit(table_text(direct_sum_extend(resolve_source(source))));
    } else if (*list) {
        out.emit(fixtures_doc(out.format));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const pnorm::ConsistencyError& e) {
        std::cerr << "pnorm: internal inconsistency: " << e.what() << '\n';
        return kExitInternal;
    } catch (const pnorm::Error& e) {
        std::cerr << "pnorm: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "pnorm: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
