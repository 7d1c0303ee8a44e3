#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "qli/units.hpp"

namespace qli {

// Gated single-photon detector statistics.
struct GatedCounterReading {
    double count_rate = 0.0;     // N, counts/s with the injection laser on
    double dark_rate = 0.0;      // N_dc, counts/s with the laser off
    double gate_rate = 1e5;      // f_s, gates/s
    double gate_width = 20e-9;   // T, s
    double efficiency = 0.1;     // eta_d

    void validate() const;

    // Click probability per gate attributable to injected light.
    double excess_click_probability() const { return (count_rate - dark_rate) / gate_rate; }
};

// Mean injected photons per gate from 1 - exp(-eta mu) = (N - N_dc)/f_s.
double infer_mu_inj(const GatedCounterReading& reading);

struct MuInjEstimate {
    double value = 0.0;
    std::optional<double> std_error;
};

struct InferenceOptions {
    // Integration time behind both count rates. Enables a standard error
    // from Poisson counting statistics.
    std::optional<double> integration_time;
    // Time the phase modulator is active. When set, mu_inj is rescaled by
    // window / gate_width; leave empty when the gate already matches it.
    std::optional<double> modulation_window;
};

MuInjEstimate estimate_mu_inj(const GatedCounterReading& reading, const InferenceOptions& options);

// Reference point tying laser energy per time bin to injected photons.
struct CouplingReference {
    double ref_energy_per_bin = 17.2e-3 * 20e-9;  // 17.2 mW over a 20 ns bin
    double ref_mu_inj = 3.32e-3;

    void validate() const;
};

// Linear scaling of the reference point to another energy per bin.
double extrapolate_mu_inj(double energy_per_bin, const CouplingReference& ref = {});

struct AttackLaser {
    double pulse_energy = 4e-6;     // J
    double pulse_duration = 20e-9;  // s
    double repetition_rate = 1e6;   // Hz

    void validate() const;
    double duty_cycle() const { return pulse_duration * repetition_rate; }
};

// Bob's data framing; only pulses inside a frame need to be illuminated.
struct FrameSchedule {
    double frame_period = 1e-3;
    int pulses_per_frame = 1000;
    double pulse_width = 20e-9;
    double pulse_period = 200e-9;

    void validate() const;
    // Laser repetition rate needed inside a frame burst.
    double burst_rate() const { return 1.0 / pulse_period; }
    // Data pulses per second averaged over frames.
    double pulses_per_second() const { return pulses_per_frame / frame_period; }
};

// Laser firing once per data pulse of the schedule.
AttackLaser laser_for_schedule(double pulse_energy, const FrameSchedule& schedule = {});

double average_attack_power(const AttackLaser& laser);
double cw_equivalent_power(double energy_per_bin, double bin);

// Loss between the laser output and the photons found inside the fiber:
// 10 log10(P_in / (mu_inj h nu / bin)).
Decibel coupling_attenuation(double input_power, double mu_inj, double bin,
                             Wavelength lambda = default_wavelength());

// Counter log rows: time_s,counts. Each row is a bin starting at time_s;
// bins are uniformly spaced.
struct CounterSample {
    double time_s = 0.0;
    double counts = 0.0;
};

std::vector<CounterSample> parse_counter_log(std::string_view csv);
std::vector<CounterSample> load_counter_log(const std::filesystem::path& path);

struct IntegrationWindow {
    double start = -1e300;
    double end = 1e300;
};

struct CountRate {
    double rate = 0.0;      // counts/s
    double duration = 0.0;  // s integrated
    double total_counts = 0.0;
};

// Mean count rate over rows with start <= time_s < end. The bin width is
// taken from the log's row spacing unless given explicitly.
CountRate integrate_counts(const std::vector<CounterSample>& log, IntegrationWindow window = {},
                           std::optional<double> bin_width = std::nullopt);

} // namespace qli
