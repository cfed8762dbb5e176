#pragma once

#include <cmath>
#include <stdexcept>

#include "secsim/random.hpp"
#include "secsim/units.hpp"

namespace secsim {

enum class FadingKind { deterministic, rayleigh, rician };

/// Small-scale fading law for a complex channel gain h, normalized so that
/// E[|h|^2] equals mean_power.
struct FadingDescriptor {
    FadingKind kind = FadingKind::deterministic;
    double rician_k = 0.0;   // line-of-sight to scattered power ratio
    double mean_power = 1.0; // E[|h|^2]
};

inline FadingDescriptor deterministic_fading(double power) {
    if (!(power >= 0.0)) {
        throw std::domain_error("deterministic fading power must be non-negative");
    }
    return FadingDescriptor{FadingKind::deterministic, 0.0, power};
}

inline FadingDescriptor rayleigh_fading(double mean_power) {
    if (!(mean_power >= 0.0)) {
        throw std::domain_error("rayleigh mean power must be non-negative");
    }
    return FadingDescriptor{FadingKind::rayleigh, 0.0, mean_power};
}

/// Rician with K-factor parameterization: the line-of-sight component carries
/// K/(K+1) of the mean power, the scattered component 1/(K+1). K = 0
/// degenerates to Rayleigh.
inline FadingDescriptor rician_fading(double k_factor, double mean_power) {
    if (!(k_factor >= 0.0)) {
        throw std::domain_error("rician K factor must be non-negative");
    }
    if (!(mean_power >= 0.0)) {
        throw std::domain_error("rician mean power must be non-negative");
    }
    return FadingDescriptor{FadingKind::rician, k_factor, mean_power};
}

inline Complex draw_fading(const FadingDescriptor& d, RandomStream& stream) {
    switch (d.kind) {
    case FadingKind::deterministic:
        return Complex{std::sqrt(d.mean_power), 0.0};
    case FadingKind::rayleigh: {
        const double s = std::sqrt(d.mean_power / 2.0);
        return Complex{s * stream.normal(), s * stream.normal()};
    }
    case FadingKind::rician: {
        const double los_amp = std::sqrt(d.rician_k / (d.rician_k + 1.0) * d.mean_power);
        const double scatter = std::sqrt(d.mean_power / (2.0 * (d.rician_k + 1.0)));
        const Complex los = los_amp * unit_phasor(stream.uniform());
        return los + Complex{scatter * stream.normal(), scatter * stream.normal()};
    }
    }
    throw std::logic_error("unreachable fading kind");
}

/// Power gain |h|^2 with the law implied by the descriptor (exponential for
/// Rayleigh, noncentral chi-square for Rician, constant otherwise).
inline double draw_fading_power(const FadingDescriptor& d, RandomStream& stream) {
    switch (d.kind) {
    case FadingKind::deterministic:
        return d.mean_power;
    case FadingKind::rayleigh:
        return d.mean_power > 0.0 ? stream.exponential(d.mean_power) : 0.0;
    case FadingKind::rician:
        return std::norm(draw_fading(d, stream));
    }
    throw std::logic_error("unreachable fading kind");
}

} // namespace secsim
