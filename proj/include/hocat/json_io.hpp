#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "hocat/chain.hpp"
#include "hocat/homotopy.hpp"
#include "hocat/tabular.hpp"

namespace hocat {

nlohmann::json read_json_file(const std::string& path);

// Rows as nested arrays; an empty array stands for any matrix with no entries.
Matrix matrix_from_json(std::uint32_t p, std::size_t rows, std::size_t cols, const nlohmann::json& j);
nlohmann::json to_json(const Matrix& m);

// {"p": 2, "degrees": [dims], "d": [d_1, d_2, ...]}
ChainComplex chain_complex_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ChainComplex& X);
// {"source": complex, "target": complex, "components": [f_0, f_1, ...]}
ChainMap chain_map_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ChainMap& f);
nlohmann::json to_json(const GradedMap& k);

nlohmann::json to_json(const Diagnostics& d);

nlohmann::json to_json(const ChainInstance& c, const Cylinder<ChainInstance>& C);
nlohmann::json to_json(const ChainInstance& c, const Homotopy<ChainInstance>& H);
nlohmann::json to_json(const TabularInstance& c, const Cylinder<TabularInstance>& C);
nlohmann::json to_json(const TabularInstance& c, const Homotopy<TabularInstance>& H);
nlohmann::json to_json(const TabularInstance& c, const CylinderMap<TabularInstance>& m);

}  // namespace hocat
