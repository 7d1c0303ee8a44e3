#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qli/bits.hpp"
#include "qli/execution.hpp"

namespace qli {

// Toggle QRNG: clicks on the "set" detector drive the level high, clicks on
// the "reset" detector drive it low, and the level is sampled on a clock.
struct ToggleQrngConfig {
    double rate_set = 12.5e6;    // counts/s
    double rate_reset = 12.5e6;  // counts/s
    double sample_rate = 1e6;    // Hz
    std::uint64_t seed = 0;
    bool initial_level = false;

    void validate() const;
};

enum class BiasTarget { Set, Reset };

// Extra count rate from injected light; negative removes light.
struct InjectionBias {
    double extra_rate = 0.0;
    BiasTarget target = BiasTarget::Set;
};

struct DetectionRates {
    double set = 0.0;
    double reset = 0.0;

    double total() const { return set + reset; }
};

DetectionRates effective_rates(const ToggleQrngConfig& config, const InjectionBias& bias = {});

// Probability that the last click before a sample came from the set detector.
double steady_state_p1(const ToggleQrngConfig& config, const InjectionBias& bias = {});

class ToggleLatch {
public:
    explicit ToggleLatch(bool level = false) : level_(level) {}

    void on_set() { level_ = true; }
    void on_reset() { level_ = false; }
    bool level() const { return level_; }

private:
    bool level_;
};

// Event-driven simulator: the merged detection process is Poisson with
// rate r_set + r_reset and each click belongs to the set detector with
// probability r_set / (r_set + r_reset). Successive generate() calls
// continue the same timeline and latch state, so a bias can change between
// them.
//
// Random numbers come from std::mt19937_64, whose output sequence the C++
// standard fixes; uniform doubles use the top 53 bits and exponential gaps
// are drawn by inversion. No std distribution is involved, so a seed gives
// the same bits wherever std::log rounds the same way.
class ToggleQrng {
public:
    explicit ToggleQrng(const ToggleQrngConfig& config);

    BitSequence generate(const InjectionBias& bias, std::size_t n_bits);

    bool level() const { return latch_.level(); }

private:
    double uniform();

    ToggleQrngConfig config_;
    std::mt19937_64 engine_;
    ToggleLatch latch_;
    double now_ = 0.0;  // in sample periods
};

BitSequence simulate(const ToggleQrngConfig& config, const InjectionBias& bias, std::size_t n_bits);

double ones_ratio(const BitSequence& bits);

// Average length of maximal runs of equal bits.
double mean_run_length(const BitSequence& bits);

// Ones ratio for the same configuration under each seed in `seeds`.
std::vector<double> ones_ratio_ensemble(ToggleQrngConfig config, const InjectionBias& bias,
                                        std::size_t n_bits, const std::vector<std::uint64_t>& seeds,
                                        Exec exec = Exec::Parallel);

} // namespace qli
