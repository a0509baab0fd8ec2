#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace mbqc {

enum class PauliBasis : std::uint8_t { X, Y, Z };

std::string to_string(PauliBasis b);

// Measurement angle in the XY plane, kept as an exact multiple of pi when it
// was given as one, otherwise as raw radians. Exact angles normalise to
// num/den in [0, 2) with gcd(num, den) = 1.
class Angle {
  public:
    static Angle pi_times(long long num, long long den = 1);
    static Angle from_radians(double r);

    // "1/4" and "3" are multiples of pi (fraction and integer), anything
    // with a decimal point or exponent is radians.
    static Angle parse(const std::string& token);

    bool is_rational() const { return rational_; }
    long long num() const;
    long long den() const;
    double radians() const;

    // X for angles 0 and pi, Y for pi/2 and 3pi/2, nothing otherwise.
    // Only exact angles classify; raw radians never do.
    std::optional<PauliBasis> pauli_basis() const;

    std::string str() const;

    friend bool operator==(const Angle& a, const Angle& b);

  private:
    Angle() = default;
    bool rational_ = true;
    long long num_ = 0;
    long long den_ = 1;
    double radians_ = 0.0;
};

} // namespace mbqc
