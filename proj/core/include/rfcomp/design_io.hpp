#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rfcomp/pulse.hpp"

namespace rfcomp {

/// JSON object with keys method, theta_deg, delta, gammas_deg, alphas_deg,
/// selection, seed.
std::string design_to_json(const DesignRecord& design);

/// Throws PreconditionError on missing keys, wrong types, or an invalid record.
DesignRecord design_from_json(std::string_view text);

void save_design(const DesignRecord& design, const std::filesystem::path& path);
DesignRecord load_design(const std::filesystem::path& path);

}  // namespace rfcomp
