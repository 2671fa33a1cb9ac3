#include "rotabouss/config.hpp"

#include <fstream>

#include "rotabouss/errors.hpp"

namespace rotabouss {

PhysicalParams params_from_json(const nlohmann::json& j, PhysicalParams base) {
    const nlohmann::json& src = j.contains("params") ? j.at("params") : j;
    if (!src.is_object()) throw PreconditionError("parameter config must be a JSON object");
    auto take = [&](const char* key, double& dst) {
        if (!src.contains(key)) return;
        if (!src.at(key).is_number())
            throw PreconditionError(std::string("config key '") + key + "' must be a number");
        dst = src.at(key).get<double>();
    };
    take("sigma", base.sigma);
    take("ro", base.ro);
    take("rayleigh", base.rayleigh);
    take("alpha1", base.alpha1);
    take("alpha2", base.alpha2);
    return base;
}

nlohmann::json params_to_json(const PhysicalParams& p) {
    return {{"sigma", p.sigma},
            {"ro", p.ro},
            {"rayleigh", p.rayleigh},
            {"alpha1", p.alpha1},
            {"alpha2", p.alpha2}};
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open config '" + path.string() + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw PreconditionError("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
}

PhysicalParams load_params(const std::filesystem::path& path, PhysicalParams base) {
    return params_from_json(read_json_file(path), base);
}

}  // namespace rotabouss
