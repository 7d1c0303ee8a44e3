#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qli/qkd_link.hpp"
#include "qli/units.hpp"

namespace qli {

// Hardware description loaded from a "key = value" text file.
//
//   # Clavis2 defaults
//   alpha_coup_db = 10.8
//   alpha_pm_db = 4.2
//   alpha_spool_db = 4.6
//   mu_b = 5.69e5
//   wavelength_nm = 1550
//   fiber_atten_db_per_km = 0.2
//
// Keys may appear in any order and are optional; omitted keys keep their
// defaults. Unknown or repeated keys are errors.
struct HardwareProfile {
    AliceLossBudget budget;
    SourceModel source;
    Wavelength wavelength = default_wavelength();
    double fiber_atten_db_per_km = 0.2;
};

HardwareProfile parse_profile(std::string_view text);
HardwareProfile load_profile(const std::filesystem::path& path);
std::string format_profile(const HardwareProfile& profile);

} // namespace qli
