#pragma once

#include <stdexcept>
#include <string>

namespace qli {

// Argument outside the mathematical or physical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Alice's VOA would need negative attenuation to reach the target photon number.
class InfeasibleAttenuation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Every detector gate clicked; the Poisson click model cannot be inverted.
class DetectorSaturated : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Channel loss outside the range the QKD system can operate at.
class OutOfOperatingRange : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file (profile, counter log, bit file, CSV).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qli
