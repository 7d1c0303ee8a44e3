#include "qli/profile.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "qli/errors.hpp"

namespace qli {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text, int line_no)
{
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw FormatError("profile line " + std::to_string(line_no) + ": '" + std::string(text) +
                          "' is not a number");
    return value;
}

} // namespace

HardwareProfile parse_profile(std::string_view text)
{
    HardwareProfile profile;
    std::set<std::string, std::less<>> seen;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw FormatError("profile line " + std::to_string(line_no) + ": expected key = value");
        const auto key = trim(line.substr(0, eq));
        const double value = parse_number(trim(line.substr(eq + 1)), line_no);
        if (!seen.emplace(key).second)
            throw FormatError("profile line " + std::to_string(line_no) + ": duplicate key '" +
                              std::string(key) + "'");

        if (key == "alpha_coup_db")
            profile.budget.alpha_coup = value;
        else if (key == "alpha_pm_db")
            profile.budget.alpha_pm = value;
        else if (key == "alpha_spool_db")
            profile.budget.alpha_spool = value;
        else if (key == "mu_b")
            profile.source.mu_b = value;
        else if (key == "wavelength_nm")
            profile.wavelength = Wavelength::nanometers(value);
        else if (key == "fiber_atten_db_per_km")
            profile.fiber_atten_db_per_km = value;
        else
            throw FormatError("profile line " + std::to_string(line_no) + ": unknown key '" +
                              std::string(key) + "'");
    }
    profile.budget.validate();
    profile.source.validate();
    if (!(profile.fiber_atten_db_per_km >= 0.0))
        throw DomainError("fiber_atten_db_per_km must be non-negative");
    return profile;
}

HardwareProfile load_profile(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open hardware profile " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_profile(buf.str());
}

std::string format_profile(const HardwareProfile& profile)
{
    std::ostringstream out;
    out << std::setprecision(17);
    out << "alpha_coup_db = " << profile.budget.alpha_coup << '\n'
        << "alpha_pm_db = " << profile.budget.alpha_pm << '\n'
        << "alpha_spool_db = " << profile.budget.alpha_spool << '\n'
        << "mu_b = " << profile.source.mu_b << '\n'
        << "wavelength_nm = " << profile.wavelength.meters() * 1e9 << '\n'
        << "fiber_atten_db_per_km = " << profile.fiber_atten_db_per_km << '\n';
    return out.str();
}

} // namespace qli
