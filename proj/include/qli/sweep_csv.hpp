#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qli/keyrate.hpp"

namespace qli {

inline constexpr std::string_view kSweepCsvHeader =
    "distance_km,loss_db,t,protocol,pulse_energy_j,mu,mu_ext,mu_prime,rate_estimated,rate_actual,secure";

// Raw writes rates as computed (negative or -inf when insecure).
// ClampInsecure writes 0 for those rows; the secure column keeps the verdict.
enum class RateRendering { Raw, ClampInsecure };

void write_sweep_csv(std::ostream& out, const std::vector<KeyRatePoint>& rows,
                     RateRendering rendering = RateRendering::Raw);
std::string sweep_csv(const std::vector<KeyRatePoint>& rows,
                      RateRendering rendering = RateRendering::Raw);

std::vector<KeyRatePoint> parse_sweep_csv(std::string_view text);

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

} // namespace qli
