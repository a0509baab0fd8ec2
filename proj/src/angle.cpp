#include "mbqc/angle.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "mbqc/errors.hpp"

namespace mbqc {

std::string to_string(PauliBasis b) {
    switch (b) {
    case PauliBasis::X: return "X";
    case PauliBasis::Y: return "Y";
    case PauliBasis::Z: return "Z";
    }
    return "?";
}

Angle Angle::pi_times(long long num, long long den) {
    if (den == 0) throw ParameterError("angle denominator must not be zero");
    if (den < 0) {
        den = -den;
        num = -num;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    long long period = 2 * den;
    num %= period;
    if (num < 0) num += period;
    Angle a;
    a.rational_ = true;
    a.num_ = num;
    a.den_ = den;
    a.radians_ = static_cast<double>(num) * M_PI / static_cast<double>(den);
    return a;
}

Angle Angle::from_radians(double r) {
    if (!std::isfinite(r)) throw ParameterError("angle must be finite");
    double period = 2.0 * M_PI;
    r = std::fmod(r, period);
    if (r < 0) r += period;
    Angle a;
    a.rational_ = false;
    a.radians_ = r;
    return a;
}

Angle Angle::parse(const std::string& token) {
    if (token.empty()) throw ParameterError("empty angle");
    try {
        std::size_t used = 0;
        if (auto slash = token.find('/'); slash != std::string::npos) {
            long long num = std::stoll(token.substr(0, slash), &used);
            if (used != slash) throw ParameterError("bad angle '" + token + "'");
            long long den = std::stoll(token.substr(slash + 1), &used);
            if (used != token.size() - slash - 1)
                throw ParameterError("bad angle '" + token + "'");
            return pi_times(num, den);
        }
        if (token.find('.') != std::string::npos ||
            token.find('e') != std::string::npos ||
            token.find('E') != std::string::npos) {
            double r = std::stod(token, &used);
            if (used != token.size()) throw ParameterError("bad angle '" + token + "'");
            return from_radians(r);
        }
        long long num = std::stoll(token, &used);
        if (used != token.size()) throw ParameterError("bad angle '" + token + "'");
        return pi_times(num, 1);
    } catch (const std::invalid_argument&) {
        throw ParameterError("bad angle '" + token + "'");
    } catch (const std::out_of_range&) {
        throw ParameterError("angle '" + token + "' is out of range");
    }
}

long long Angle::num() const {
    if (!rational_) throw ParameterError("angle is not a multiple of pi");
    return num_;
}

long long Angle::den() const {
    if (!rational_) throw ParameterError("angle is not a multiple of pi");
    return den_;
}

double Angle::radians() const { return radians_; }

std::optional<PauliBasis> Angle::pauli_basis() const {
    if (!rational_) return std::nullopt;
    if (den_ == 1) return PauliBasis::X;          // 0 or pi
    if (den_ == 2) return PauliBasis::Y;          // pi/2 or 3pi/2
    return std::nullopt;
}

std::string Angle::str() const {
    if (rational_) {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", radians_);
    std::string s = buf;
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0"; // keep the radians marker so the token parses back the same way
    return s;
}

bool operator==(const Angle& a, const Angle& b) {
    if (a.rational_ != b.rational_) return false;
    if (a.rational_) return a.num_ == b.num_ && a.den_ == b.den_;
    return a.radians_ == b.radians_;
}

} // namespace mbqc
