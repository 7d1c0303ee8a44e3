#include "qli/qkd_link.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "qli/errors.hpp"

namespace qli {

namespace {

void require_channel(Transmission t)
{
    if (!t.passive())
        throw DomainError("channel transmission must lie in (0, 1]");
}

} // namespace

void AliceLossBudget::validate() const
{
    if (!(alpha_coup >= 0.0 && alpha_pm >= 0.0 && alpha_spool >= 0.0 && alpha_voa >= 0.0))
        throw DomainError("Alice component losses must be non-negative");
}

double round_trip(const AliceLossBudget& budget)
{
    return 2.0 * (budget.alpha_coup + budget.alpha_voa + budget.alpha_spool + budget.alpha_pm);
}

std::string_view to_string(Protocol p)
{
    return p == Protocol::BB84 ? "bb84" : "sarg04";
}

Protocol parse_protocol(std::string_view name)
{
    if (name == "bb84" || name == "BB84")
        return Protocol::BB84;
    if (name == "sarg04" || name == "SARG04" || name == "sarg")
        return Protocol::SARG04;
    throw DomainError("unknown protocol '" + std::string(name) + "'");
}

void SourceModel::validate() const
{
    if (!(mu_b > 0.0) || !std::isfinite(mu_b))
        throw DomainError("mu_b must be positive");
}

double optimal_mu(Protocol protocol, Transmission t)
{
    require_channel(t);
    return protocol == Protocol::BB84 ? t.value() : 2.0 * std::sqrt(t.value());
}

Decibel required_alpha_a(Protocol protocol, Transmission t, const SourceModel& source)
{
    require_channel(t);
    source.validate();
    // mu_A = mu_B t 10^(-alpha_A/10) solved for alpha_A at mu_A = optimal_mu.
    const double base = 10.0 * std::log10(source.mu_b);
    if (protocol == Protocol::BB84)
        return Decibel{base};
    return Decibel{base + 5.0 * std::log10(t.value()) - 10.0 * std::log10(2.0)};
}

Decibel voa_attenuation(Protocol protocol, Transmission t, const SourceModel& source,
                        const AliceLossBudget& budget)
{
    budget.validate();
    const double alpha_a = required_alpha_a(protocol, t, source).value;
    const double voa = (alpha_a - budget.fixed_round_trip()) / 2.0;
    if (voa < 0.0) {
        std::ostringstream msg;
        msg << "attenuation infeasible: " << to_string(protocol) << " at t = " << t.value()
            << " needs VOA = " << voa << " dB";
        throw InfeasibleAttenuation(msg.str());
    }
    return Decibel{voa};
}

AliceLossBudget configure_voa(Protocol protocol, Transmission t, const SourceModel& source,
                              AliceLossBudget budget)
{
    budget.alpha_voa = voa_attenuation(protocol, t, source, budget).value;
    return budget;
}

Decibel probe_loss(Protocol protocol, Transmission t, const SourceModel& source,
                   const AliceLossBudget& budget)
{
    const double voa = voa_attenuation(protocol, t, source, budget).value;
    return Decibel{2.0 * budget.alpha_pm + budget.alpha_spool + voa + budget.alpha_coup};
}

double mu_ext(double mu_inj, Protocol protocol, Transmission t, const SourceModel& source,
              const AliceLossBudget& budget)
{
    if (!(mu_inj >= 0.0))
        throw DomainError("injected photon number must be non-negative");
    return mu_inj * db_to_linear(probe_loss(protocol, t, source, budget)).value();
}

Protocol select_protocol(Decibel channel_loss)
{
    if (!(channel_loss.value >= 0.0))
        throw DomainError("channel loss must be non-negative");
    if (channel_loss.value <= kBb84MaxLossDb)
        return Protocol::BB84;
    if (channel_loss.value <= kMaxChannelLossDb)
        return Protocol::SARG04;
    std::ostringstream msg;
    msg << "channel loss " << channel_loss.value << " dB is out of operating range (max "
        << kMaxChannelLossDb << " dB)";
    throw OutOfOperatingRange(msg.str());
}

} // namespace qli
