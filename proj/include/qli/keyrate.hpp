#pragma once

#include <optional>
#include <vector>

#include "qli/execution.hpp"
#include "qli/injection.hpp"
#include "qli/qkd_link.hpp"
#include "qli/units.hpp"

namespace qli {

struct SargParams {
    double detector_efficiency = 0.1;  // visibility is taken as 1

    void validate() const;
};

// Which factor multiplies I1(D1) in the BB84 leakage term. TransmissionLeading is
// (t - mu/2); UnitLeading is (1 - mu/2), kept for sensitivity studies.
enum class PnsTerm { TransmissionLeading, UnitLeading };

#if defined(QLI_BB84_UNIT_LEADING_PNS)
inline constexpr PnsTerm kDefaultPnsTerm = PnsTerm::UnitLeading;
#else
inline constexpr PnsTerm kDefaultPnsTerm = PnsTerm::TransmissionLeading;
#endif

struct Bb84Params {
    double detector_efficiency = 0.1;
    double dark_count_prob = 5e-5;  // per gate
    double visibility = 0.99;
    PnsTerm pns_term = kDefaultPnsTerm;

    void validate() const;
};

double binary_entropy(double x);

// Eve's information per single photon with a quantum memory (SARG04).
double sarg_storage_info();

// Bits per pulse; negative when the link is insecure. No clamping.
double sarg_rate(double mu, Transmission t, const SargParams& params = {});

double bb84_qber(double mu, Transmission t, const Bb84Params& params = {});
double bb84_rate(double mu, Transmission t, const Bb84Params& params = {});

// True while mu keeps D1 = (1-V)/(2 - mu/t) within [0, 1/2], the branch on
// which Eve's cloning information grows with the disturbance she may cause.
bool bb84_in_model_range(double mu, Transmission t, const Bb84Params& params = {});

// Largest mu the BB84 model is evaluated at for a given channel.
double bb84_mu_upper_bound(Transmission t, const Bb84Params& params = {});

// Golden-section argmax of bb84_rate over (0, bb84_mu_upper_bound].
double bb84_optimal_mu_numeric(Transmission t, const Bb84Params& params = {},
                               double tolerance = 1e-6);

struct AttackModel {
    double atten_db_per_km = 0.2;
    AliceLossBudget budget;
    SourceModel source;
    CouplingReference coupling;
    SargParams sarg;
    Bb84Params bb84;
    bool numeric_mu = false;  // BB84: use the numeric optimum instead of mu = t
};

struct KeyRatePoint {
    double distance_km = 0.0;
    double loss_db = 0.0;
    double t = 1.0;
    Protocol protocol = Protocol::SARG04;
    double pulse_energy_j = 0.0;
    double mu = 0.0;
    double mu_ext = 0.0;
    double mu_prime = 0.0;
    double rate_estimated = 0.0;
    double rate_actual = 0.0;
    bool secure = false;

    bool operator==(const KeyRatePoint&) const = default;
};

// Rate Alice and Bob believe in (mu) versus the rate with injected photons
// included (mu' = mu + mu_ext). When mu' leaves the BB84 model range no key
// can be certified and rate_actual is -infinity.
KeyRatePoint rate_under_attack(Protocol protocol, double distance_km, double energy_per_bin,
                               const AttackModel& model = {});

// Smallest distance where rate_actual <= 0, searched up to the distance at
// which the channel loss reaches max_loss_db. Empty when the whole range is secure.
std::optional<double> cutoff_distance(Protocol protocol, double energy_per_bin,
                                      const AttackModel& model = {},
                                      double max_loss_db = kMaxChannelLossDb);

// Inclusive grid start, start+step, ..., stop.
std::vector<double> distance_grid(double start_km, double stop_km, double step_km);

// One row per (distance, energy), ordered distance-major.
std::vector<KeyRatePoint> sweep(Protocol protocol, const std::vector<double>& distances_km,
                                const std::vector<double>& energies_j,
                                const AttackModel& model = {}, Exec exec = Exec::Parallel);

} // namespace qli
