#pragma once

#include <string>

#include "hlab/radial.hpp"

namespace hlab {

inline constexpr const char* kProfileFormat = "hessian-profile/1";

/// JSON document {"format","n","k","R","boundary","atom","nodes","values","slope"}.
std::string profile_to_json(const RadialProfile& u);
/// Throws schema-error on missing keys, wrong types or an unknown format string.
RadialProfile profile_from_json(const std::string& text);

void save_profile(const RadialProfile& u, const std::string& path);
RadialProfile load_profile(const std::string& path);

}  // namespace hlab
