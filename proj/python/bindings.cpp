#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pnorm/constructions.hpp"
#include "pnorm/error.hpp"
#include "pnorm/normality.hpp"
#include "pnorm/source.hpp"
#include "pnorm/spectrum.hpp"

namespace py = pybind11;
using namespace pnorm;

namespace {

py::int_ big(const BigInt& v) { return py::int_(py::str(v.str())); }

std::optional<RegularityKind> kind_of(const std::optional<std::string>& s) {
    if (!s || *s == "unknown") return std::nullopt;
    for (auto k : {RegularityKind::regular, RegularityKind::weakly_regular, RegularityKind::non_weakly_regular,
                   RegularityKind::not_bent})
        if (to_string(k) == *s) return k;
    throw Error("unknown regularity kind \"" + *s + "\"");
}

NormalityOptions options(unsigned workers, std::size_t witness_cap, int start_dim) {
    NormalityOptions o;
    o.workers = workers;
    o.witness_cap = witness_cap;
    o.start_dim = start_dim;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Normality testing and Walsh analysis of p-ary functions";
    py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);
    py::register_exception<Error>(m, "PnormError", PyExc_ValueError);

    py::class_<PAryFunction>(m, "Function")
        .def(py::init([](int p, int n, const std::vector<int>& table) {
                 std::vector<Digit> t;
                 t.reserve(table.size());
                 for (int v : table) {
                     if (v < 0 || v >= p) throw Error("table value out of range");
                     t.push_back(Digit(v));
                 }
                 return PAryFunction(p, n, std::move(t));
             }),
             py::arg("p"), py::arg("n"), py::arg("table"))
        .def_property_readonly("p", &PAryFunction::p)
        .def_property_readonly("n", &PAryFunction::n)
        .def_property_readonly("table", [](const PAryFunction& f) {
            return std::vector<int>(f.table().begin(), f.table().end());
        })
        .def("__call__", [](const PAryFunction& f, Point x) {
            if (x >= f.size()) throw py::index_error("point out of range");
            return int(f(x));
        })
        .def("__len__", &PAryFunction::size)
        .def("__eq__", [](const PAryFunction& a, const PAryFunction& b) { return a == b; })
        .def("__repr__", [](const PAryFunction& f) {
            return "<Function F_" + std::to_string(f.p()) + "^" + std::to_string(f.n()) + ">";
        });

    m.def("parse_spec", &parse_function_spec, py::arg("text"));
    m.def("resolve", &resolve_source, py::arg("source"));
    m.def("fixture", [](const std::string& name) { return build_fixture(name); }, py::arg("name"));
    m.def("fixtures", [] {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& f : fixtures()) out.emplace_back(f.name, f.formula);
        return out;
    });

    m.def("walsh_spectrum", [](const PAryFunction& f) {
        std::vector<std::vector<std::int64_t>> out;
        for (const auto& w : walsh_spectrum(f)) out.push_back(w.canonical().counts());
        return out;
    }, py::arg("f"), "Coefficients of each Walsh value on 1, e, ..., e^(p-1) (last one zero).");
    m.def("walsh_norms", [](const PAryFunction& f) {
        std::vector<std::int64_t> out;
        for (const auto& w : walsh_spectrum(f)) {
            const auto v = w.norm_sq().as_integer();
            if (!v) throw Error("squared modulus is not a rational integer");
            out.push_back(*v);
        }
        return out;
    }, py::arg("f"));
    m.def("is_bent", py::overload_cast<const PAryFunction&>(&is_bent), py::arg("f"));
    m.def("classify", [](const PAryFunction& f) {
        const auto v = classify_regularity(f);
        py::dict d;
        d["bent"] = v.kind != RegularityKind::not_bent;
        d["kind"] = std::string(to_string(v.kind));
        d["zeta"] = v.zeta ? py::object(py::str(std::string(to_string(*v.zeta)))) : py::object(py::none());
        d["dual_available"] = v.dual.has_value();
        return d;
    }, py::arg("f"));
    m.def("dual", &dual, py::arg("f"));
    m.def("algebraic_degree", &algebraic_degree, py::arg("f"));

    m.def("normality_json", [](const PAryFunction& f, int k, const std::string& mode, unsigned workers,
                               std::size_t witness_cap, int start_dim) {
        py::gil_scoped_release release;
        return report_to_json(test_normality(f, k, parse_mode(mode), options(workers, witness_cap, start_dim)));
    }, py::arg("f"), py::arg("k"), py::arg("mode") = "constant", py::arg("workers") = 1, py::arg("witness_cap") = 64,
       py::arg("start_dim") = 1);
    m.def("max_normality_json", [](const PAryFunction& f, const std::string& mode, unsigned workers,
                                   std::size_t witness_cap) {
        py::gil_scoped_release release;
        const auto r = max_normality(f, parse_mode(mode), options(workers, witness_cap, 1));
        return std::make_pair(r.k_max, r.report ? std::optional<std::string>(report_to_json(*r.report)) : std::nullopt);
    }, py::arg("f"), py::arg("mode") = "constant", py::arg("workers") = 1, py::arg("witness_cap") = 64);
    m.def("brute_force_normal", [](const PAryFunction& f, int k, const std::string& mode) {
        return brute_force_oracle(f, k, parse_mode(mode), 0).normal;
    }, py::arg("f"), py::arg("k"), py::arg("mode") = "constant");

    m.def("direct_sum_extend", &direct_sum_extend, py::arg("f"));
    m.def("product_construction", [](int p, int n, std::int64_t a, std::int64_t b) {
        return product_construction(ExtField::conway(p, n), a, b);
    }, py::arg("p"), py::arg("n"), py::arg("alpha_exp"), py::arg("beta_exp"));
    m.def("coulter_matthews", &coulter_matthews, py::arg("n"), py::arg("k"), py::arg("coeff_exp"));

    m.def("nonnormal_existence", [](int p, int n, int k) {
        const auto e = nonnormal_existence(p, n, k);
        return py::make_tuple(big(e.exponent), e.exists);
    }, py::arg("p"), py::arg("n"), py::arg("k"));
    m.def("normality_cap", [](int p, int n, const std::optional<std::string>& kind) {
        return normality_cap(p, n, kind_of(kind));
    }, py::arg("p"), py::arg("n"), py::arg("kind") = py::none());
    m.def("gaussian_binomial", [](int p, int n, int k) { return big(gaussian_binomial(p, n, k)); },
          py::arg("p"), py::arg("n"), py::arg("k"));
    m.def("affine_flat_count", [](int p, int n, int k) { return big(affine_flat_count(p, n, k)); },
          py::arg("p"), py::arg("n"), py::arg("k"));
    m.def("cubic_density_exponent", &cubic_density_exponent, py::arg("p"), py::arg("n"), py::arg("l"));
}
