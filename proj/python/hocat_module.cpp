#include <string>

#include <json.hpp>
#include <pybind11/pybind11.h>

#include "hocat/chain.hpp"
#include "hocat/json_io.hpp"
#include "hocat/tabular.hpp"
#include "hocat/two_category.hpp"

namespace py = pybind11;
using namespace hocat;
using nlohmann::json;

// Values cross the boundary as JSON text; the Python package wraps them.
namespace {

json parse(const std::string& s) {
    try {
        return json::parse(s);
    } catch (const json::exception& e) {
        throw InvalidInput(e.what());
    }
}

FactorSystem parse_system(const std::string& s) {
    if (s == "cof-trivfib") return FactorSystem::CofThenTrivFib;
    if (s == "trivcof-fib") return FactorSystem::TrivCofThenFib;
    throw InvalidInput("system must be cof-trivfib or trivcof-fib");
}

std::string py_validate_tabular(const std::string& table) {
    auto c = TabularInstance::from_json(parse(table));
    return to_json(c, validate(c)).dump();
}

std::string py_homology(const std::string& complex) {
    return json(homology_dims(chain_complex_from_json(parse(complex)))).dump();
}

std::string py_classify(const std::string& map) {
    auto f = chain_map_from_json(parse(map));
    auto fl = ChainInstance(f.source().modulus()).classify(f);
    return json{{"we", fl.is_we}, {"fib", fl.is_fib}, {"cof", fl.is_cof}}.dump();
}

std::string py_factorize(const std::string& map, const std::string& system) {
    auto f = chain_map_from_json(parse(map));
    ChainInstance c(f.source().modulus());
    auto fa = c.factorize(f, parse_system(system));
    return json{{"left", to_json(fa.left)}, {"right", to_json(fa.right)}, {"valid", factorization_valid(c, f, fa)}}
        .dump();
}

std::string py_split(const std::string& map) {
    auto s = chain_map_from_json(parse(map));
    ChainInstance c(s.source().modulus());
    auto w = split_we(c, s);
    return json{{"i", to_json(w.i)},
                {"p", to_json(w.p)},
                {"retraction", to_json(w.retraction)},
                {"section", to_json(w.section)},
                {"checks", to_json(validate_split_we(c, s, w))}}
        .dump();
}

std::string py_null(const std::string& f, const std::string& g) {
    auto k = null_homotopy(chain_map_from_json(parse(f)), chain_map_from_json(parse(g)));
    return k ? to_json(*k).dump() : "null";
}

std::size_t py_pi0_count(const std::string& source, const std::string& target) {
    auto X = chain_complex_from_json(parse(source));
    auto Y = chain_complex_from_json(parse(target));
    ChainInstance c(X.modulus());
    ChainOracle o(c);
    HomotopyTwoCategory<ChainInstance, ChainOracle> ho(c, o);
    return ho.pi0_quotient(X, Y).size();
}

std::size_t py_tabular_pi0_count(const std::string& table, const std::string& x, const std::string& y) {
    auto c = TabularInstance::from_json(parse(table));
    TabularOracle o(c);
    HomotopyTwoCategory<TabularInstance, TabularOracle> ho(c, o);
    return ho.pi0_quotient(c.object(x), c.object(y)).size();
}

std::string py_tabular_replace(const std::string& table, const std::string& x) {
    auto c = TabularInstance::from_json(parse(table));
    Replacement<TabularInstance> rep(c);
    auto X = c.object(x);
    auto r = rep.object(X);
    return json{{"QX", c.name_of(r.QX)}, {"p", c.name_of(r.p)}, {"RX", c.name_of(r.RX)},
                {"v", c.name_of(r.v)},   {"rX", c.name_of(r.rX)}, {"checks", to_json(rep.check_object(X))}}
        .dump();
}

}  // namespace

PYBIND11_MODULE(_hocat, m) {
    m.doc() = "Homotopy 2-category computations on chain complexes and finite model categories";

    static py::exception<InvalidInput> invalid_input(m, "InvalidInput", PyExc_ValueError);
    static py::exception<PreconditionFailed> precondition(m, "PreconditionFailed", PyExc_RuntimeError);
    static py::exception<NoLift> no_lift(m, "NoLift", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InvalidInput& e) {
            py::set_error(invalid_input, e.what());
        } catch (const PreconditionFailed& e) {
            py::set_error(precondition, e.what());
        } catch (const NoLift& e) {
            py::set_error(no_lift, e.what());
        }
    });

    m.def("validate_tabular", &py_validate_tabular, py::arg("table"));
    m.def("homology", &py_homology, py::arg("complex"));
    m.def("classify", &py_classify, py::arg("map"));
    m.def("factorize", &py_factorize, py::arg("map"), py::arg("system"));
    m.def("split_we", &py_split, py::arg("map"));
    m.def("null_homotopy", &py_null, py::arg("f"), py::arg("g"));
    m.def("pi0_count", &py_pi0_count, py::arg("source"), py::arg("target"));
    m.def("tabular_pi0_count", &py_tabular_pi0_count, py::arg("table"), py::arg("source"), py::arg("target"));
    m.def("tabular_replace", &py_tabular_replace, py::arg("table"), py::arg("object"));
}
