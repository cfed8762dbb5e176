#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

namespace secsim {

using Complex = std::complex<double>;

/// Dimensionless power ratio expressed in decibels.
struct Decibel {
    double value = 0.0;
};

/// Absolute power expressed in dB relative to one milliwatt.
struct DecibelMilliwatt {
    double value = 0.0;
};

/// Non-negative dimensionless linear power ratio.
class LinearRatio {
public:
    LinearRatio() = default;
    explicit LinearRatio(double v) : value_(v) {
        if (!(v >= 0.0)) {
            throw std::domain_error("LinearRatio must be non-negative, got " +
                                    std::to_string(v));
        }
    }
    double value() const noexcept { return value_; }

private:
    double value_ = 0.0;
};

/// Non-negative absolute power in watts.
class Watts {
public:
    Watts() = default;
    explicit Watts(double v) : value_(v) {
        if (!(v >= 0.0)) {
            throw std::domain_error("Watts must be non-negative, got " +
                                    std::to_string(v));
        }
    }
    double value() const noexcept { return value_; }

private:
    double value_ = 0.0;
};

inline Decibel lin_to_db(LinearRatio x) {
    if (x.value() <= 0.0) {
        throw std::domain_error("lin_to_db requires a strictly positive ratio");
    }
    return Decibel{10.0 * std::log10(x.value())};
}

inline LinearRatio db_to_lin(Decibel x) {
    return LinearRatio{std::pow(10.0, x.value / 10.0)};
}

/// dbm_to_watt(30 dBm) = 1 W by definition.
inline Watts dbm_to_watt(DecibelMilliwatt p) {
    return Watts{std::pow(10.0, (p.value - 30.0) / 10.0)};
}

inline DecibelMilliwatt watt_to_dbm(Watts p) {
    if (p.value() <= 0.0) {
        throw std::domain_error("watt_to_dbm requires strictly positive power");
    }
    return DecibelMilliwatt{10.0 * std::log10(p.value()) + 30.0};
}

/// Gaussian tail probability Q(x) = P(Z > x), Z ~ N(0,1),
/// computed as erfc(x / sqrt(2)) / 2.
inline double q_function(double x) {
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

inline double norm_squared(std::span<const Complex> v) noexcept {
    double s = 0.0;
    for (const auto& x : v) {
        s += std::norm(x);
    }
    return s;
}

/// Conjugate inner product sum_i conj(a_i) * b_i.
inline Complex hermitian_dot(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("hermitian_dot: vector size mismatch");
    }
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

/// Unit-magnitude phasor exp(j * 2 * pi * cycles).
inline Complex unit_phasor(double cycles) {
    return std::polar(1.0, 2.0 * std::numbers::pi * cycles);
}

} // namespace secsim
