#include "hocat/json_io.hpp"

#include <fstream>

namespace hocat {

using json = nlohmann::json;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

Matrix matrix_from_json(std::uint32_t p, std::size_t rows, std::size_t cols, const json& j) {
    if (!j.is_array()) throw InvalidInput("matrix must be an array of rows");
    if (j.empty() && (rows == 0 || cols == 0)) return Matrix::zero(p, rows, cols);
    if (j.size() != rows) throw InvalidInput("matrix has the wrong number of rows");
    std::vector<std::vector<long long>> r;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols) throw InvalidInput("matrix row has the wrong length");
        std::vector<long long> v;
        for (const auto& x : row) {
            if (!x.is_number_integer()) throw InvalidInput("matrix entries must be integers");
            v.push_back(x.get<long long>());
        }
        r.push_back(std::move(v));
    }
    return Matrix::from_rows(p, rows, cols, r);
}

json to_json(const Matrix& m) { return m.to_rows(); }

ChainComplex chain_complex_from_json(const json& j) {
    if (!j.is_object()) throw InvalidInput("complex must be an object");
    auto p = j.value("p", 2u);
    if (!j.contains("degrees") || !j.at("degrees").is_array()) throw InvalidInput("complex needs 'degrees'");
    auto dims = j.at("degrees").get<std::vector<std::size_t>>();
    std::vector<Matrix> d;
    const json empty = json::array();
    const json& dj = j.contains("d") ? j.at("d") : empty;
    if (!dj.is_array()) throw InvalidInput("'d' must be an array of matrices");
    if (dims.size() > 1 && dj.size() != dims.size() - 1) throw InvalidInput("'d' needs one matrix per positive degree");
    for (std::size_t n = 1; n < dims.size(); ++n) d.push_back(matrix_from_json(p, dims[n - 1], dims[n], dj[n - 1]));
    return ChainComplex(p, dims, d);
}

json to_json(const ChainComplex& X) {
    json d = json::array();
    for (std::size_t n = 1; n < X.length(); ++n) d.push_back(to_json(X.diff(static_cast<long>(n))));
    return {{"p", X.modulus()}, {"degrees", X.dims()}, {"d", d}};
}

ChainMap chain_map_from_json(const json& j) {
    if (!j.is_object() || !j.contains("source") || !j.contains("target"))
        throw InvalidInput("map needs 'source' and 'target'");
    auto X = chain_complex_from_json(j.at("source"));
    auto Y = chain_complex_from_json(j.at("target"));
    if (X.modulus() != Y.modulus()) throw InvalidInput("map between complexes over different fields");
    const json empty = json::array();
    const json& cj = j.contains("components") ? j.at("components") : empty;
    std::vector<Matrix> comps;
    for (std::size_t n = 0; n < X.length(); ++n) {
        long dn = static_cast<long>(n);
        comps.push_back(n < cj.size() ? matrix_from_json(X.modulus(), Y.dim(dn), X.dim(dn), cj[n])
                                      : Matrix::zero(X.modulus(), Y.dim(dn), X.dim(dn)));
    }
    return ChainMap(X, Y, comps);
}

json to_json(const ChainMap& f) {
    json c = json::array();
    for (std::size_t n = 0; n < f.source().length(); ++n) c.push_back(to_json(f.at(static_cast<long>(n))));
    return {{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"components", c}};
}

json to_json(const GradedMap& k) {
    json c = json::array();
    for (const auto& m : k.components()) c.push_back(to_json(m));
    return {{"degree", k.degree()}, {"components", c}};
}

json to_json(const Diagnostics& d) {
    json checks = json::array();
    for (const auto& c : d.checks) checks.push_back({{"check", c.name}, {"ok", c.ok}});
    return {{"ok", d.ok()}, {"checks", checks}};
}

json to_json(const ChainInstance&, const Cylinder<ChainInstance>& C) {
    return {{"X", to_json(C.X)},   {"W", to_json(C.W)},   {"Z", to_json(C.Z)},
            {"d0", to_json(C.d0)}, {"d1", to_json(C.d1)}, {"s", to_json(C.s)},
            {"x", to_json(C.x)},   {"fibrant", C.fibrant}, {"quillen", C.quillen}};
}

json to_json(const ChainInstance& c, const Homotopy<ChainInstance>& H) {
    return {{"cylinder", to_json(c, H.C)}, {"h", to_json(H.h)}, {"f", to_json(H.f)}, {"g", to_json(H.g)},
            {"chain_homotopy", to_json(c.extract_homotopy(H))}};
}

json to_json(const TabularInstance& c, const Cylinder<TabularInstance>& C) {
    return {{"X", c.name_of(C.X)},   {"W", c.name_of(C.W)},   {"Z", c.name_of(C.Z)},
            {"d0", c.name_of(C.d0)}, {"d1", c.name_of(C.d1)}, {"s", c.name_of(C.s)},
            {"x", c.name_of(C.x)},   {"fibrant", C.fibrant},  {"quillen", C.quillen}};
}

json to_json(const TabularInstance& c, const Homotopy<TabularInstance>& H) {
    return {{"cylinder", to_json(c, H.C)}, {"h", c.name_of(H.h)}, {"f", c.name_of(H.f)}, {"g", c.name_of(H.g)}};
}

json to_json(const TabularInstance& c, const CylinderMap<TabularInstance>& m) {
    return {{"source", to_json(c, m.source)}, {"target", to_json(c, m.target)},
            {"phi", c.name_of(m.phi)}, {"psi", c.name_of(m.psi)}};
}

}  // namespace hocat
