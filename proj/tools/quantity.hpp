#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qli::cli {

// Bad command-line input (exit code 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Dimension { Length, Energy, Power, Frequency, Time, Attenuation };

// "<number><suffix>" to SI, e.g. "1550nm", "4uJ", "17.2mW", "25MHz", "20ns", "3dB".
// A bare number is read in SI base units; a warning goes to `warn` when the
// value is non-zero and the dimension has a physical unit.
double parse_quantity(std::string_view text, Dimension dim, std::ostream* warn = nullptr);

std::vector<double> parse_quantity_list(std::string_view text, Dimension dim,
                                        std::ostream* warn = nullptr);

double parse_plain_number(std::string_view text);

// "A:B:STEP" with plain numbers.
struct RangeSpec {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
};
RangeSpec parse_range(std::string_view text);

// "A:B" with plain numbers.
std::pair<double, double> parse_interval(std::string_view text);

} // namespace qli::cli
