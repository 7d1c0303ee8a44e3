#pragma once

#include <string_view>

#include "qli/units.hpp"

namespace qli {

// Alice's internal component losses in dB. The Faraday mirror is lossless.
struct AliceLossBudget {
    double alpha_coup = 10.8;
    double alpha_pm = 4.2;
    double alpha_spool = 4.6;
    double alpha_voa = 0.0;

    void validate() const;

    // Round-trip loss excluding the VOA: 2(coup + spool + pm).
    double fixed_round_trip() const { return 2.0 * (alpha_coup + alpha_spool + alpha_pm); }
};

double round_trip(const AliceLossBudget& budget);

enum class Protocol { BB84, SARG04 };

std::string_view to_string(Protocol p);
Protocol parse_protocol(std::string_view name);

struct SourceModel {
    double mu_b = 5.69e5;  // photons per pulse leaving Bob

    void validate() const;
};

// Photon number Alice targets: t for BB84, 2 sqrt(t) for SARG04.
double optimal_mu(Protocol protocol, Transmission t);

// Round-trip attenuation inside Alice needed to hit optimal_mu.
Decibel required_alpha_a(Protocol protocol, Transmission t, const SourceModel& source);

// VOA setting (one pass). Throws InfeasibleAttenuation if the target needs gain.
Decibel voa_attenuation(Protocol protocol, Transmission t, const SourceModel& source,
                        const AliceLossBudget& budget);

// Budget with alpha_voa set for the given protocol and channel.
AliceLossBudget configure_voa(Protocol protocol, Transmission t, const SourceModel& source,
                              AliceLossBudget budget);

// One-way loss seen by photons injected into the spool on their way out:
// PM twice, spool, VOA, coupler.
Decibel probe_loss(Protocol protocol, Transmission t, const SourceModel& source,
                   const AliceLossBudget& budget);

// Extra photons per pulse leaving Alice because of injection.
double mu_ext(double mu_inj, Protocol protocol, Transmission t, const SourceModel& source,
              const AliceLossBudget& budget);

// Protocol the system runs for a given channel loss: BB84 up to 3 dB, SARG04 to 20 dB.
Protocol select_protocol(Decibel channel_loss);

inline constexpr double kBb84MaxLossDb = 3.0;
inline constexpr double kMaxChannelLossDb = 20.0;

} // namespace qli
