#pragma once

// Physical constants and unit conversions. Everything is SI internally;
// suffix parsing (nm, fJ, dB, ...) lives in the command-line layer.

namespace qli {

inline constexpr double kPlanck = 6.62607015e-34;      // J s (exact, SI 2019)
inline constexpr double kSpeedOfLight = 2.99792458e8;  // m/s (exact)

class Wavelength {
public:
    explicit Wavelength(double meters);
    static Wavelength nanometers(double nm) { return Wavelength(nm * 1e-9); }

    double meters() const { return meters_; }

private:
    double meters_;
};

// Wavelength used for photon-count conversions unless the caller says otherwise.
inline Wavelength default_wavelength() { return Wavelength::nanometers(1550.0); }

// Attenuation in dB; negative values are gain.
struct Decibel {
    double value = 0.0;
};

// Dimensionless power ratio, strictly positive.
class Transmission {
public:
    explicit Transmission(double ratio);

    double value() const { return ratio_; }
    bool passive() const { return ratio_ <= 1.0; }

private:
    double ratio_;
};

double photon_energy(Wavelength lambda);
double photons_from_energy(double joules, Wavelength lambda = default_wavelength());

Transmission db_to_linear(Decibel attenuation);
Decibel linear_to_db(Transmission t);
Decibel linear_to_db(double ratio);

Transmission channel_transmission(double length_km, double atten_db_per_km);

} // namespace qli
