#include "qli/units.hpp"

#include <cmath>
#include <string>

#include "qli/errors.hpp"

namespace qli {

Wavelength::Wavelength(double meters) : meters_(meters)
{
    if (!(meters > 0.0) || !std::isfinite(meters))
        throw DomainError("wavelength must be positive, got " + std::to_string(meters) + " m");
}

Transmission::Transmission(double ratio) : ratio_(ratio)
{
    if (!(ratio > 0.0) || !std::isfinite(ratio))
        throw DomainError("transmission must be positive and finite");
}

double photon_energy(Wavelength lambda)
{
    return kPlanck * kSpeedOfLight / lambda.meters();
}

double photons_from_energy(double joules, Wavelength lambda)
{
    if (!(joules >= 0.0))
        throw DomainError("pulse energy must be non-negative");
    return joules / photon_energy(lambda);
}

Transmission db_to_linear(Decibel attenuation)
{
    return Transmission(std::pow(10.0, -attenuation.value / 10.0));
}

Decibel linear_to_db(Transmission t)
{
    return Decibel{-10.0 * std::log10(t.value())};
}

Decibel linear_to_db(double ratio)
{
    if (!(ratio > 0.0))
        throw DomainError("cannot express a non-positive ratio in dB");
    return linear_to_db(Transmission(ratio));
}

Transmission channel_transmission(double length_km, double atten_db_per_km)
{
    if (!(length_km >= 0.0) || !(atten_db_per_km >= 0.0))
        throw DomainError("fiber length and attenuation must be non-negative");
    return db_to_linear(Decibel{length_km * atten_db_per_km});
}

} // namespace qli
