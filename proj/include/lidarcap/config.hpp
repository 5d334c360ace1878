#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "lidarcap/domain.hpp"
#include "lidarcap/mask_geometry.hpp"
#include "lidarcap/pipeline.hpp"

namespace lidarcap {

struct TemplateConfig {
  bool include_host_lateral = false;
  // Pool sizes for the caption-space audit; unset means "use the enumerated pools".
  std::optional<std::size_t> first_pool;
  std::optional<std::size_t> followup_pool;
  std::size_t max_length = 4;
};

struct EvalConfig {
  std::size_t k = 5;
  double window_s = 300.0;
};

// Everything the CLI can tune. JSON sections: host, neighbor, templates, eval, mask.
struct Config {
  HostTagConfig host;
  NeighborConfig neighbor;
  TemplateConfig templates;
  EvalConfig eval;
  MaskOptions mask;

  PipelineConfig pipeline() const { return {host, neighbor}; }
  void validate() const;
};

// Missing keys keep their defaults; unknown keys and wrong types raise BadConfig.
Config config_from_json(const nlohmann::json& j);
Config load_config(const std::string& path);
nlohmann::ordered_json config_to_json(const Config& cfg);

}  // namespace lidarcap
