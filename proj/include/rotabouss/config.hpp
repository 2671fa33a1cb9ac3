#pragma once

#include <filesystem>

#include "json.hpp"
#include "rotabouss/params.hpp"

namespace rotabouss {

// {"sigma","ro","rayleigh","alpha1","alpha2"}; missing keys keep the values
// already in `base`. Unknown keys are ignored so run manifests (which nest the
// parameters under "params") are accepted too.
PhysicalParams params_from_json(const nlohmann::json& j, PhysicalParams base = {});
nlohmann::json params_to_json(const PhysicalParams& p);

// Reads a JSON file. A document with a "params" object is treated as a run
// manifest and its "params" object is used.
nlohmann::json read_json_file(const std::filesystem::path& path);
PhysicalParams load_params(const std::filesystem::path& path, PhysicalParams base = {});

}  // namespace rotabouss
