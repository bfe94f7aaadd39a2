// Python bindings: the main operations, JSON-in / JSON-out at the schema-1
// contract shared with the CLI, plus a few scalar conveniences.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "equires/contact.hpp"
#include "equires/delta.hpp"
#include "equires/io.hpp"

namespace py = pybind11;
using namespace equires;
using equires::io::json;

namespace {

json parse_doc(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& ex) {
        throw BadInput(std::string("JSON parse error: ") + ex.what());
    }
}

std::optional<int> opt_m(int m) { return m > 0 ? std::optional<int>(m) : std::nullopt; }

std::string sing_json(const std::string& doc, int m) {
    BasicObject B = io::load_basic_object(parse_doc(doc), opt_m(m));
    json out;
    out["schema"] = 1;
    for (const auto& c : B.pair().charts) {
        Ideal S = B.sing(c.id);
        json gens = json::array();
        if (!basis_contains_one(S.fiber_gb())) {
            Ideal Sp = S.pruned();
            for (const auto& g : Sp.gens())
                if (!g.is_zero()) gens.push_back(g.to_string());
        }
        out["charts"][c.id] = std::move(gens);
    }
    return out.dump();
}

std::string resolve_json(const std::string& doc, int m) {
    BasicObject B = io::load_basic_object(parse_doc(doc), opt_m(m));
    return io::tree_to_json(resolve_fiber(B.fiber()), true).dump();
}

std::string equires_json(const std::string& doc, int m) {
    BasicObject B = io::load_basic_object(parse_doc(doc), opt_m(m));
    return io::equires_to_json(equiresolve(B), true).dump();
}

std::string principalize_json(const std::string& doc, int m) {
    IdTriple T = io::load_idtriple(parse_doc(doc), opt_m(m));
    return io::equires_to_json(principalize(T), true).dump();
}

std::string embedded_json(const std::string& doc, int m) {
    auto [X, W] = io::load_embedded(parse_doc(doc), opt_m(m));
    return io::embedded_to_json(resolve_embedded(X, W), true).dump();
}

int order_of(const std::vector<std::string>& gens, const std::vector<std::string>& vars,
             int m, bool fiber) {
    Ideal I = Ideal::parse(gens, vars, m);
    auto nu = I.order_in_vars(vars, fiber ? Level::Fiber : Level::Full);
    return nu.value_or(-1);
}

std::vector<std::string> delta_gens(const std::vector<std::string>& gens,
                                    const std::vector<std::string>& vars, int m, int k) {
    Ideal D = delta_power(Ideal::parse(gens, vars, m), k).pruned();
    std::vector<std::string> out;
    for (const auto& g : D.gens())
        if (!g.is_zero()) out.push_back(g.to_string());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Algorithmic equiresolution of basic objects over Q[eps]/(eps^m)";

    py::register_exception<BadInput>(mod, "BadInput", PyExc_ValueError);
    py::register_exception<AlgorithmStuck>(mod, "AlgorithmStuck", PyExc_RuntimeError);

    mod.def("sing", &sing_json, py::arg("doc"), py::arg("m") = 0,
            "Sing(B) per chart; JSON string in, JSON string out.");
    mod.def("resolve", &resolve_json, py::arg("doc"), py::arg("m") = 0,
            "Resolve the fiber object; returns the resolution tree as JSON.");
    mod.def("equires", &equires_json, py::arg("doc"), py::arg("m") = 0,
            "Equiresolution over A; returns the report as JSON.");
    mod.def("principalize", &principalize_json, py::arg("doc"), py::arg("m") = 0,
            "Equiprincipalize an id-triple; returns the report as JSON.");
    mod.def("embedded", &embedded_json, py::arg("doc"), py::arg("m") = 0,
            "Embedded-variety equiresolution; returns the report as JSON.");
    mod.def("order", &order_of, py::arg("gens"), py::arg("vars"), py::arg("m") = 1,
            py::arg("fiber") = false,
            "Order of the ideal at the origin (-1 when undefined).");
    mod.def("delta", &delta_gens, py::arg("gens"), py::arg("vars"), py::arg("m") = 1,
            py::arg("k") = 1, "Generators of Delta^k of the ideal.");
}
