#include "qli/injection.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "qli/errors.hpp"

namespace qli {

void GatedCounterReading::validate() const
{
    if (!(gate_rate > 0.0))
        throw DomainError("gate rate must be positive");
    if (!(efficiency > 0.0 && efficiency <= 1.0))
        throw DomainError("detector efficiency must lie in (0, 1]");
    if (!(gate_width > 0.0))
        throw DomainError("gate width must be positive");
    if (!(dark_rate >= 0.0))
        throw DomainError("dark count rate must be non-negative");
    if (!(count_rate >= dark_rate))
        throw DomainError("count rate is below the dark count rate");
}

double infer_mu_inj(const GatedCounterReading& reading)
{
    reading.validate();
    const double p = reading.excess_click_probability();
    if (p >= 1.0)
        throw DetectorSaturated("detector saturated: excess clicks in every gate");
    return -std::log1p(-p) / reading.efficiency;
}

MuInjEstimate estimate_mu_inj(const GatedCounterReading& reading, const InferenceOptions& options)
{
    MuInjEstimate est{infer_mu_inj(reading), std::nullopt};
    double scale = 1.0;
    if (options.modulation_window) {
        if (!(*options.modulation_window > 0.0))
            throw DomainError("modulation window must be positive");
        scale = *options.modulation_window / reading.gate_width;
    }
    if (options.integration_time) {
        const double tau = *options.integration_time;
        if (!(tau > 0.0))
            throw DomainError("integration time must be positive");
        // Independent Poisson counts for signal and dark runs:
        // var(N - N_dc) = (N + N_dc) / tau.
        const double sigma_rate = std::sqrt((reading.count_rate + reading.dark_rate) / tau);
        const double p = reading.excess_click_probability();
        const double dmu_dp = 1.0 / (reading.efficiency * (1.0 - p));
        est.std_error = scale * dmu_dp * sigma_rate / reading.gate_rate;
    }
    est.value *= scale;
    return est;
}

void CouplingReference::validate() const
{
    if (!(ref_energy_per_bin > 0.0) || !(ref_mu_inj > 0.0))
        throw DomainError("coupling reference energy and photon number must be positive");
}

double extrapolate_mu_inj(double energy_per_bin, const CouplingReference& ref)
{
    ref.validate();
    if (!(energy_per_bin >= 0.0))
        throw DomainError("laser energy per bin must be non-negative");
    return ref.ref_mu_inj * (energy_per_bin / ref.ref_energy_per_bin);
}

void AttackLaser::validate() const
{
    if (!(pulse_energy > 0.0 && pulse_duration > 0.0 && repetition_rate > 0.0))
        throw DomainError("laser pulse energy, duration and repetition rate must be positive");
    if (duty_cycle() > 1.0)
        throw DomainError("laser pulses overlap (duration x repetition rate > 1)");
}

void FrameSchedule::validate() const
{
    if (!(frame_period > 0.0 && pulse_width > 0.0 && pulse_period > 0.0) || pulses_per_frame <= 0)
        throw DomainError("frame schedule values must be positive");
    if (pulse_width > pulse_period)
        throw DomainError("pulse width exceeds pulse period");
    if (pulses_per_frame * pulse_period > frame_period)
        throw DomainError("pulse train does not fit in the frame");
}

AttackLaser laser_for_schedule(double pulse_energy, const FrameSchedule& schedule)
{
    schedule.validate();
    AttackLaser laser{pulse_energy, schedule.pulse_width, schedule.pulses_per_second()};
    laser.validate();
    return laser;
}

double average_attack_power(const AttackLaser& laser)
{
    laser.validate();
    return laser.pulse_energy * laser.repetition_rate;
}

double cw_equivalent_power(double energy_per_bin, double bin)
{
    if (!(bin > 0.0))
        throw DomainError("time bin must be positive");
    return energy_per_bin / bin;
}

Decibel coupling_attenuation(double input_power, double mu_inj, double bin, Wavelength lambda)
{
    if (!(input_power > 0.0) || !(bin > 0.0))
        throw DomainError("input power and bin must be positive");
    if (!(mu_inj > 0.0))
        throw DomainError("coupling attenuation is undefined for zero injected photons");
    const double coupled_power = mu_inj * photon_energy(lambda) / bin;
    return Decibel{10.0 * std::log10(input_power / coupled_power)};
}

std::vector<CounterSample> parse_counter_log(std::string_view csv)
{
    std::vector<CounterSample> rows;
    std::istringstream in{std::string(csv)};
    std::string line;
    int line_no = 0;
    bool header_done = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (!header_done) {
            header_done = true;
            if (line != "time_s,counts")
                throw FormatError("counter log must start with header 'time_s,counts'");
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw FormatError("counter log line " + std::to_string(line_no) + ": expected 2 columns");
        auto field = [&](std::string_view s) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || ptr != s.data() + s.size())
                throw FormatError("counter log line " + std::to_string(line_no) + ": bad number '" +
                                  std::string(s) + "'");
            return v;
        };
        const std::string_view view = line;
        CounterSample row{field(view.substr(0, comma)), field(view.substr(comma + 1))};
        if (row.counts < 0.0)
            throw FormatError("counter log line " + std::to_string(line_no) + ": negative counts");
        if (!rows.empty() && row.time_s <= rows.back().time_s)
            throw FormatError("counter log line " + std::to_string(line_no) +
                              ": timestamps must increase");
        rows.push_back(row);
    }
    if (!header_done)
        throw FormatError("counter log is empty");
    return rows;
}

std::vector<CounterSample> load_counter_log(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open counter log " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_counter_log(buf.str());
}

CountRate integrate_counts(const std::vector<CounterSample>& log, IntegrationWindow window,
                           std::optional<double> bin_width)
{
    double width = 0.0;
    if (bin_width) {
        width = *bin_width;
    } else {
        if (log.size() < 2)
            throw FormatError("need at least two rows to infer the bin width");
        width = log[1].time_s - log[0].time_s;
    }
    if (!(width > 0.0))
        throw DomainError("bin width must be positive");

    CountRate out;
    std::size_t bins = 0;
    for (const auto& row : log) {
        if (row.time_s >= window.start && row.time_s < window.end) {
            out.total_counts += row.counts;
            ++bins;
        }
    }
    if (bins == 0)
        throw DomainError("integration window contains no counter rows");
    out.duration = static_cast<double>(bins) * width;
    out.rate = out.total_counts / out.duration;
    return out;
}

} // namespace qli
