#pragma once

#include <string>

#include <json.hpp>

#include "incidence_braid/families.hpp"
#include "incidence_braid/lambda_table.hpp"

namespace incidence_braid {

inline constexpr const char* kSchemaTag = "incidence-braid/1";

nlohmann::json field_to_json(const Field& f);
Field field_from_json(const nlohmann::json& j);

nlohmann::json poset_to_json(const Poset& p);
Poset poset_from_json(const nlohmann::json& j);

nlohmann::json table_to_json(const LambdaTable& lt);
LambdaTable table_from_json(const nlohmann::json& j);

nlohmann::json spec_params_to_json(const BipartiteSpec& spec, const FamilyParams& params);
std::pair<BipartiteSpec, FamilyParams> spec_params_from_json(const nlohmann::json& j);
BipartiteSpec spec_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace incidence_braid
