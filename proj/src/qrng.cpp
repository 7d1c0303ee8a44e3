#include "qli/qrng.hpp"

#include <cmath>

#include "qli/errors.hpp"

namespace qli {

void ToggleQrngConfig::validate() const
{
    if (!(rate_set >= 0.0 && rate_reset >= 0.0))
        throw DomainError("detection rates must be non-negative");
    if (rate_set + rate_reset == 0.0)
        throw DomainError("at least one detection rate must be positive");
    if (!(sample_rate > 0.0))
        throw DomainError("sample rate must be positive");
}

DetectionRates effective_rates(const ToggleQrngConfig& config, const InjectionBias& bias)
{
    config.validate();
    DetectionRates r{config.rate_set, config.rate_reset};
    (bias.target == BiasTarget::Set ? r.set : r.reset) += bias.extra_rate;
    if (!(r.set >= 0.0 && r.reset >= 0.0))
        throw DomainError("injection bias drives a detection rate negative");
    if (r.total() == 0.0)
        throw DomainError("both detection rates are zero");
    return r;
}

double steady_state_p1(const ToggleQrngConfig& config, const InjectionBias& bias)
{
    const auto r = effective_rates(config, bias);
    return r.set / r.total();
}

ToggleQrng::ToggleQrng(const ToggleQrngConfig& config)
    : config_(config), engine_(config.seed), latch_(config.initial_level)
{
    config_.validate();
}

double ToggleQrng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

BitSequence ToggleQrng::generate(const InjectionBias& bias, std::size_t n_bits)
{
    if (n_bits == 0)
        throw DomainError("number of bits must be positive");
    const auto rates = effective_rates(config_, bias);
    // Time is measured in sample periods; the first sample is one period ahead.
    const double clicks_per_sample = rates.total() / config_.sample_rate;
    const double p_set = rates.set / rates.total();
    const double mean_gap = 1.0 / clicks_per_sample;
    // 1 - uniform() lies in (0, 1], so the logarithm stays finite.
    auto gap = [&] { return -std::log(1.0 - uniform()) * mean_gap; };

    BitSequence bits(n_bits);
    // Memorylessness lets the pending click be redrawn whenever rates change.
    double next_click = now_ + gap();
    for (std::size_t k = 0; k < n_bits; ++k) {
        now_ += 1.0;
        while (next_click <= now_) {
            if (uniform() < p_set)
                latch_.on_set();
            else
                latch_.on_reset();
            next_click += gap();
        }
        if (latch_.level())
            bits.set(k, true);
    }
    return bits;
}

BitSequence simulate(const ToggleQrngConfig& config, const InjectionBias& bias, std::size_t n_bits)
{
    return ToggleQrng(config).generate(bias, n_bits);
}

double ones_ratio(const BitSequence& bits)
{
    if (bits.empty())
        throw DomainError("ones ratio of an empty sequence");
    return static_cast<double>(bits.count_ones()) / static_cast<double>(bits.size());
}

double mean_run_length(const BitSequence& bits)
{
    if (bits.empty())
        throw DomainError("run length of an empty sequence");
    std::size_t runs = 1;
    for (std::size_t i = 1; i < bits.size(); ++i)
        runs += bits[i] != bits[i - 1];
    return static_cast<double>(bits.size()) / static_cast<double>(runs);
}

std::vector<double> ones_ratio_ensemble(ToggleQrngConfig config, const InjectionBias& bias,
                                        std::size_t n_bits, const std::vector<std::uint64_t>& seeds,
                                        Exec exec)
{
    effective_rates(config, bias);
    std::vector<double> ratios(seeds.size());
    const auto n = static_cast<std::ptrdiff_t>(seeds.size());
    auto one = [&](std::ptrdiff_t i) {
        ToggleQrngConfig c = config;
        c.seed = seeds[static_cast<std::size_t>(i)];
        ratios[static_cast<std::size_t>(i)] = ones_ratio(simulate(c, bias, n_bits));
    };
    if (exec == Exec::Serial) {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            one(i);
        return ratios;
    }
    ExceptionSlot slot;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        slot.run([&] { one(i); });
    slot.rethrow();
    return ratios;
}

} // namespace qli
