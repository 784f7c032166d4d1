#include "rfcomp/design_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rfcomp/error.hpp"

namespace rfcomp {

using nlohmann::json;

std::string design_to_json(const DesignRecord& design) {
  json j;
  j["method"] = to_string(design.method);
  j["theta_deg"] = design.theta_deg;
  j["delta"] = design.delta;
  j["gammas_deg"] = design.gammas_deg;
  j["alphas_deg"] = design.alphas_deg;
  j["selection"] = to_string(design.selection);
  j["seed"] = design.seed;
  return j.dump(2) + "\n";
}

DesignRecord design_from_json(std::string_view text) {
  DesignRecord d;
  try {
    const json j = json::parse(text);
    d.method = parse_method(j.at("method").get<std::string>());
    d.theta_deg = j.at("theta_deg").get<double>();
    d.delta = j.at("delta").get<double>();
    d.gammas_deg = j.at("gammas_deg").get<std::vector<double>>();
    d.alphas_deg = j.at("alphas_deg").get<std::vector<double>>();
    d.selection = parse_selection(j.at("selection").get<std::string>());
    d.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("invalid design record: ") + e.what());
  }
  validate(d);
  return d;
}

void save_design(const DesignRecord& design, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << design_to_json(design);
}

DesignRecord load_design(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return design_from_json(ss.str());
}

}  // namespace rfcomp
