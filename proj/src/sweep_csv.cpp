#include "qli/sweep_csv.hpp"

#include <array>
#include <charconv>
#include <ostream>
#include <sstream>

#include "qli/errors.hpp"

namespace qli {

std::string format_double(double v)
{
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{})
        throw std::runtime_error("cannot format number");
    return std::string(buf.data(), ptr);
}

namespace {

double rendered_rate(double rate, RateRendering rendering)
{
    if (rendering == RateRendering::ClampInsecure && !(rate > 0.0))
        return 0.0;
    return rate;
}

double parse_field(std::string_view s, int line_no)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw FormatError("sweep CSV line " + std::to_string(line_no) + ": bad number '" +
                          std::string(s) + "'");
    return v;
}

} // namespace

void write_sweep_csv(std::ostream& out, const std::vector<KeyRatePoint>& rows,
                     RateRendering rendering)
{
    out << kSweepCsvHeader << '\n';
    for (const auto& r : rows) {
        out << format_double(r.distance_km) << ',' << format_double(r.loss_db) << ','
            << format_double(r.t) << ',' << to_string(r.protocol) << ','
            << format_double(r.pulse_energy_j) << ',' << format_double(r.mu) << ','
            << format_double(r.mu_ext) << ',' << format_double(r.mu_prime) << ','
            << format_double(rendered_rate(r.rate_estimated, rendering)) << ','
            << format_double(rendered_rate(r.rate_actual, rendering)) << ','
            << (r.secure ? 1 : 0) << '\n';
    }
}

std::string sweep_csv(const std::vector<KeyRatePoint>& rows, RateRendering rendering)
{
    std::ostringstream out;
    write_sweep_csv(out, rows, rendering);
    return out.str();
}

std::vector<KeyRatePoint> parse_sweep_csv(std::string_view text)
{
    std::vector<KeyRatePoint> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line_no == 1) {
            if (line != kSweepCsvHeader)
                throw FormatError("sweep CSV header mismatch");
            continue;
        }
        if (line.empty())
            continue;

        std::vector<std::string_view> cols;
        std::string_view rest = line;
        for (;;) {
            const auto comma = rest.find(',');
            cols.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos)
                break;
            rest.remove_prefix(comma + 1);
        }
        if (cols.size() != 11)
            throw FormatError("sweep CSV line " + std::to_string(line_no) + ": expected 11 columns");

        KeyRatePoint p;
        p.distance_km = parse_field(cols[0], line_no);
        p.loss_db = parse_field(cols[1], line_no);
        p.t = parse_field(cols[2], line_no);
        p.protocol = parse_protocol(cols[3]);
        p.pulse_energy_j = parse_field(cols[4], line_no);
        p.mu = parse_field(cols[5], line_no);
        p.mu_ext = parse_field(cols[6], line_no);
        p.mu_prime = parse_field(cols[7], line_no);
        p.rate_estimated = parse_field(cols[8], line_no);
        p.rate_actual = parse_field(cols[9], line_no);
        if (cols[10] == "1")
            p.secure = true;
        else if (cols[10] == "0")
            p.secure = false;
        else
            throw FormatError("sweep CSV line " + std::to_string(line_no) + ": secure must be 0 or 1");
        rows.push_back(p);
    }
    if (line_no == 0)
        throw FormatError("sweep CSV is empty");
    return rows;
}

} // namespace qli
