#include <doctest.h>

#include <cmath>

#include "qli/errors.hpp"
#include "qli/units.hpp"

using namespace qli;

TEST_CASE("photon energy at telecom wavelengths")
{
    // hc/lambda evaluated at 40 digits
    CHECK(photon_energy(Wavelength::nanometers(1550)) == doctest::Approx(1.2815779723541475e-19).epsilon(1e-12));
    CHECK(photon_energy(Wavelength::nanometers(1536)) == doctest::Approx(1.2932590215813338e-19).epsilon(1e-12));
    CHECK(photon_energy(Wavelength::nanometers(775)) ==
          doctest::Approx(2.0 * photon_energy(Wavelength::nanometers(1550))).epsilon(1e-15));
    CHECK_THROWS_AS(Wavelength(0.0), DomainError);
    CHECK_THROWS_AS(Wavelength::nanometers(-1550), DomainError);
}

TEST_CASE("photons from pulse energy")
{
    CHECK(photons_from_energy(73e-15) == doctest::Approx(5.69e5).epsilon(0.01));
    CHECK(photons_from_energy(73e-15) == doctest::Approx(569610.2896174576).epsilon(1e-12));
    CHECK(photons_from_energy(0.0) == 0.0);
    CHECK(photons_from_energy(0.344e-9, Wavelength::nanometers(1536)) ==
          doctest::Approx(2.659946648424487e9).epsilon(1e-12));
    CHECK_THROWS_AS(photons_from_energy(-1e-15), DomainError);

    for (double nm : {800.0, 1310.0, 1536.0, 1550.0}) {
        const Wavelength w = Wavelength::nanometers(nm);
        CHECK(photons_from_energy(photon_energy(w), w) == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("dB conversions")
{
    CHECK(db_to_linear(Decibel{10}).value() == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(db_to_linear(Decibel{0}).value() == 1.0);
    CHECK(db_to_linear(Decibel{33}).value() == doctest::Approx(5.011872336272723e-4).epsilon(1e-12));
    CHECK(db_to_linear(Decibel{-3}).value() > 1.0);
    CHECK_THROWS_AS(linear_to_db(0.0), DomainError);
    CHECK_THROWS_AS(linear_to_db(-0.5), DomainError);

    // Round trip on (0, 1], log-spaced.
    for (int k = 0; k <= 300; ++k) {
        const double t = std::pow(10.0, -k / 20.0);
        const double back = db_to_linear(linear_to_db(t)).value();
        CHECK(std::abs(back - t) <= 1e-12 * t);
    }
}

TEST_CASE("fiber channel transmission")
{
    CHECK(channel_transmission(50, 0.2).value() == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(channel_transmission(0, 0.2).value() == 1.0);
    CHECK(channel_transmission(100, 0.2).value() == doctest::Approx(0.01).epsilon(1e-14));
    CHECK_THROWS_AS(channel_transmission(-1, 0.2), DomainError);
    CHECK_THROWS_AS(channel_transmission(1, -0.2), DomainError);

    double prev = 2.0;
    for (double a = 0; a <= 200; a += 7.5) {
        const double ta = channel_transmission(a, 0.2).value();
        CHECK(ta < prev);
        prev = ta;
        for (double b : {0.0, 3.3, 42.0}) {
            CHECK(channel_transmission(a + b, 0.2).value() ==
                  doctest::Approx(ta * channel_transmission(b, 0.2).value()).epsilon(1e-12));
        }
    }
}
