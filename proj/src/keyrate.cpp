#include "qli/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qli/errors.hpp"

namespace qli {

namespace {

void require_channel(Transmission t)
{
    if (!t.passive())
        throw DomainError("channel transmission must lie in (0, 1]");
}

void require_photons(double mu)
{
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw DomainError("mean photon number must be non-negative and finite");
}

double rate_for(Protocol protocol, double mu, Transmission t, const AttackModel& model)
{
    if (protocol == Protocol::SARG04)
        return sarg_rate(mu, t, model.sarg);
    if (!bb84_in_model_range(mu, t, model.bb84))
        return -std::numeric_limits<double>::infinity();
    return bb84_rate(mu, t, model.bb84);
}

double estimated_mu(Protocol protocol, Transmission t, const AttackModel& model)
{
    if (protocol == Protocol::BB84 && model.numeric_mu)
        return bb84_optimal_mu_numeric(t, model.bb84);
    return optimal_mu(protocol, t);
}

} // namespace

void SargParams::validate() const
{
    if (!(detector_efficiency > 0.0 && detector_efficiency <= 1.0))
        throw DomainError("detector efficiency must lie in (0, 1]");
}

void Bb84Params::validate() const
{
    if (!(detector_efficiency > 0.0 && detector_efficiency <= 1.0))
        throw DomainError("detector efficiency must lie in (0, 1]");
    if (!(dark_count_prob >= 0.0 && dark_count_prob < 1.0))
        throw DomainError("dark count probability must lie in [0, 1)");
    if (!(visibility > 0.0 && visibility <= 1.0))
        throw DomainError("visibility must lie in (0, 1]");
}

double binary_entropy(double x)
{
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("binary entropy argument must lie in [0, 1]");
    if (x == 0.0 || x == 1.0)
        return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double sarg_storage_info()
{
    return 1.0 - binary_entropy(0.5 + 0.5 * std::sqrt(1.0 - 0.5));
}

double sarg_rate(double mu, Transmission t, const SargParams& params)
{
    require_photons(mu);
    require_channel(t);
    params.validate();
    const double eta = params.detector_efficiency;
    return eta / 4.0 * (1.0 - sarg_storage_info()) * (mu * t.value() - mu * mu * mu / 12.0);
}

double bb84_qber(double mu, Transmission t, const Bb84Params& params)
{
    require_photons(mu);
    require_channel(t);
    params.validate();
    const double signal = mu * t.value() * params.detector_efficiency;
    if (signal == 0.0)
        return 0.5;
    return 0.5 - params.visibility / (2.0 * (1.0 + 2.0 * params.dark_count_prob / signal));
}

double bb84_rate(double mu, Transmission t, const Bb84Params& params)
{
    require_photons(mu);
    require_channel(t);
    params.validate();
    const double tv = t.value();
    if (mu / tv >= 2.0)
        throw DomainError("BB84 rate undefined for mu/t >= 2");
    const double d1 = (1.0 - params.visibility) / (2.0 - mu / tv);
    if (d1 > 1.0)
        throw DomainError("BB84 rate undefined: cloning disturbance D1 exceeds 1");

    const double i1 = 1.0 - binary_entropy(0.5 + std::sqrt(d1 * (1.0 - d1)));
    const double q = bb84_qber(mu, t, params);
    const double signal = mu * tv * params.detector_efficiency;
    const double lead = params.pns_term == PnsTerm::TransmissionLeading ? tv : 1.0;

    return 0.5 * (signal + 2.0 * params.dark_count_prob) * (1.0 - binary_entropy(q)) -
           0.5 * signal * ((lead - mu / 2.0) * i1 + mu / 2.0);
}

double bb84_mu_upper_bound(Transmission t, const Bb84Params& params)
{
    require_channel(t);
    params.validate();
    // D1 <= 1/2  <=>  mu/t <= 2V; mu/t = 2 itself is singular.
    return t.value() * std::min(2.0 * params.visibility, 2.0 - 2e-9);
}

bool bb84_in_model_range(double mu, Transmission t, const Bb84Params& params)
{
    return mu >= 0.0 && mu <= bb84_mu_upper_bound(t, params);
}

double bb84_optimal_mu_numeric(Transmission t, const Bb84Params& params, double tolerance)
{
    if (!(tolerance > 0.0))
        throw DomainError("tolerance must be positive");
    const double upper = bb84_mu_upper_bound(t, params);
    auto rate = [&](double mu) { return bb84_rate(mu, t, params); };

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0;
    double hi = upper;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = rate(c);
    double fd = rate(d);
    // Absolute below mu = 1, relative above zero for very lossy channels.
    const double stop = tolerance * std::min(1.0, upper);
    while (hi - lo > stop) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = rate(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = rate(d);
        }
    }
    const double mid = 0.5 * (lo + hi);
    // The optimum sits on the bound once the channel is lossy enough.
    return rate(upper) >= rate(mid) ? upper : mid;
}

KeyRatePoint rate_under_attack(Protocol protocol, double distance_km, double energy_per_bin,
                               const AttackModel& model)
{
    KeyRatePoint p;
    p.protocol = protocol;
    p.distance_km = distance_km;
    p.pulse_energy_j = energy_per_bin;
    p.loss_db = distance_km * model.atten_db_per_km;
    const Transmission t = channel_transmission(distance_km, model.atten_db_per_km);
    p.t = t.value();

    p.mu = estimated_mu(protocol, t, model);
    const double mu_inj = extrapolate_mu_inj(energy_per_bin, model.coupling);
    p.mu_ext = mu_ext(mu_inj, protocol, t, model.source, model.budget);
    p.mu_prime = p.mu + p.mu_ext;

    p.rate_estimated = rate_for(protocol, p.mu, t, model);
    p.rate_actual = rate_for(protocol, p.mu_prime, t, model);
    p.secure = p.rate_actual > 0.0;
    return p;
}

std::optional<double> cutoff_distance(Protocol protocol, double energy_per_bin,
                                      const AttackModel& model, double max_loss_db)
{
    if (!(model.atten_db_per_km > 0.0))
        throw DomainError("cutoff search needs a positive fiber attenuation");
    if (!(max_loss_db > 0.0))
        throw DomainError("maximum channel loss must be positive");

    auto rate = [&](double d) {
        return rate_under_attack(protocol, d, energy_per_bin, model).rate_actual;
    };
    const double max_distance = max_loss_db / model.atten_db_per_km;
    if (rate(0.0) <= 0.0)
        return 0.0;

    // Coarse scan for the first sign change, then bisection inside it.
    const int steps = static_cast<int>(std::ceil(max_distance / 0.25));
    double prev = 0.0;
    for (int i = 1; i <= steps; ++i) {
        const double d = std::min(max_distance, max_distance * i / steps);
        if (rate(d) <= 0.0) {
            double lo = prev;
            double hi = d;
            while (hi - lo > 1e-6) {
                const double mid = 0.5 * (lo + hi);
                (rate(mid) > 0.0 ? lo : hi) = mid;
            }
            return hi;
        }
        prev = d;
    }
    return std::nullopt;
}

std::vector<double> distance_grid(double start_km, double stop_km, double step_km)
{
    if (!(start_km >= 0.0) || !(step_km > 0.0) || !(stop_km >= start_km))
        throw DomainError("distance grid needs 0 <= start <= stop and step > 0");
    const auto n = static_cast<std::size_t>(std::floor((stop_km - start_km) / step_km + 1e-9));
    std::vector<double> grid;
    grid.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        grid.push_back(start_km + static_cast<double>(i) * step_km);
    return grid;
}

std::vector<KeyRatePoint> sweep(Protocol protocol, const std::vector<double>& distances_km,
                                const std::vector<double>& energies_j, const AttackModel& model,
                                Exec exec)
{
    for (std::size_t i = 1; i < distances_km.size(); ++i) {
        if (!(distances_km[i] > distances_km[i - 1]))
            throw DomainError("distance grid must be strictly increasing");
    }
    const std::size_t n_e = energies_j.size();
    const auto total = static_cast<std::ptrdiff_t>(distances_km.size() * n_e);
    std::vector<KeyRatePoint> rows(static_cast<std::size_t>(total));

    auto fill = [&](std::ptrdiff_t k) {
        const auto idx = static_cast<std::size_t>(k);
        rows[idx] = rate_under_attack(protocol, distances_km[idx / n_e], energies_j[idx % n_e], model);
    };

    if (exec == Exec::Serial) {
        for (std::ptrdiff_t k = 0; k < total; ++k)
            fill(k);
        return rows;
    }

    ExceptionSlot slot;
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t k = 0; k < total; ++k)
        slot.run([&] { fill(k); });
    slot.rethrow();
    return rows;
}

} // namespace qli
