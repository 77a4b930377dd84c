#pragma once

#include "zeekml/ml/model.hpp"

#include <json.hpp>

#include <memory>
#include <string>

namespace zeekml::ml {

// Versioned JSON serialization; reloading reproduces predictions exactly.
inline constexpr int kModelFormatVersion = 1;

nlohmann::ordered_json to_json(const TrainConfig& config);
TrainConfig train_config_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const TreeModel& tree);
TreeModel tree_from_json(const nlohmann::json& j);

nlohmann::ordered_json model_to_json(const Model& model);
std::unique_ptr<Model> model_from_json(const nlohmann::json& j);

void save_model(const std::string& path, const Model& model);
std::unique_ptr<Model> load_model(const std::string& path);

} // namespace zeekml::ml
