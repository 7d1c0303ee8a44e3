#include "quantity.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <ostream>
#include <utility>

namespace qli::cli {

namespace {

struct Suffix {
    std::string_view text;
    double scale;
};

std::vector<Suffix> suffixes(Dimension dim)
{
    switch (dim) {
    case Dimension::Length:
        return {{"km", 1e3}, {"m", 1.0}, {"um", 1e-6}, {"nm", 1e-9}};
    case Dimension::Energy:
        return {{"J", 1.0}, {"mJ", 1e-3}, {"uJ", 1e-6}, {"nJ", 1e-9}, {"pJ", 1e-12}, {"fJ", 1e-15}};
    case Dimension::Power:
        return {{"W", 1.0}, {"mW", 1e-3}, {"uW", 1e-6}};
    case Dimension::Frequency:
        return {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}};
    case Dimension::Time:
        return {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}};
    case Dimension::Attenuation:
        return {{"dB", 1.0}};
    }
    return {};
}

std::string_view base_unit(Dimension dim)
{
    switch (dim) {
    case Dimension::Length: return "m";
    case Dimension::Energy: return "J";
    case Dimension::Power: return "W";
    case Dimension::Frequency: return "Hz";
    case Dimension::Time: return "s";
    case Dimension::Attenuation: return "dB";
    }
    return "";
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

} // namespace

double parse_plain_number(std::string_view text)
{
    text = trim(text);
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw UsageError("'" + std::string(text) + "' is not a number");
    return v;
}

double parse_quantity(std::string_view text, Dimension dim, std::ostream* warn)
{
    text = trim(text);
    if (text.empty())
        throw UsageError("empty quantity");
    // Split at the first character that cannot belong to the number.
    std::size_t split = text.size();
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        const bool numeric = (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '+' ||
                             ((c == 'e' || c == 'E') && i > 0 && i + 1 < text.size() &&
                              (std::isdigit(static_cast<unsigned char>(text[i + 1])) ||
                               text[i + 1] == '-' || text[i + 1] == '+'));
        if (!numeric) {
            split = i;
            break;
        }
    }
    const double value = parse_plain_number(text.substr(0, split));
    const auto unit = trim(text.substr(split));
    if (unit.empty()) {
        if (warn && value != 0.0 && dim != Dimension::Attenuation)
            *warn << "warning: '" << text << "' has no unit suffix, read as " << value << ' '
                  << base_unit(dim) << '\n';
        return value;
    }
    for (const auto& s : suffixes(dim)) {
        if (s.text == unit)
            return value * s.scale;
    }
    throw UsageError("unknown unit '" + std::string(unit) + "' in '" + std::string(text) + "'");
}

std::vector<double> parse_quantity_list(std::string_view text, Dimension dim, std::ostream* warn)
{
    std::vector<double> out;
    for (;;) {
        const auto comma = text.find(',');
        out.push_back(parse_quantity(text.substr(0, comma), dim, warn));
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

RangeSpec parse_range(std::string_view text)
{
    const auto a = text.find(':');
    const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
    if (b == std::string_view::npos)
        throw UsageError("range '" + std::string(text) + "' must look like START:STOP:STEP");
    return {parse_plain_number(text.substr(0, a)), parse_plain_number(text.substr(a + 1, b - a - 1)),
            parse_plain_number(text.substr(b + 1))};
}

std::pair<double, double> parse_interval(std::string_view text)
{
    const auto a = text.find(':');
    if (a == std::string_view::npos)
        throw UsageError("interval '" + std::string(text) + "' must look like START:END");
    return {parse_plain_number(text.substr(0, a)), parse_plain_number(text.substr(a + 1))};
}

} // namespace qli::cli
