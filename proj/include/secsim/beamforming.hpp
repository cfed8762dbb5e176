#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "secsim/units.hpp"

namespace secsim {

/// Receive beamforming problem: steer weights to a channel vector under the
/// unit-gain constraint w'h = 1 while minimizing output noise power.
struct BeamScenario {
    std::vector<Complex> channel;  // h
    double noise_variance = 1.0;   // theta^2, per-antenna
    double transmit_power = 1.0;   // rho
};

struct BeamformerResult {
    std::vector<Complex> weights;     // w* = h / ||h||^2 (maximal ratio combiner)
    double snr = 0.0;                 // rho ||h||^2
    double lagrange_multiplier = 0.0; // zeta = 2 / ||h||^2
    double noise_power = 0.0;         // theta^2 ||w*||^2
    double constraint_residual = 0.0; // |w*'h - 1|
};

/// Closed-form optimum of the constrained noise-minimization problem. The
/// returned weights satisfy the unit-gain constraint to machine precision and
/// no weight vector on the constraint hyperplane attains lower noise power.
inline BeamformerResult optimal_beamformer(const BeamScenario& s) {
    const double h_norm_sq = norm_squared(s.channel);
    if (!(h_norm_sq > 0.0)) {
        throw std::domain_error("optimal_beamformer requires a nonzero channel");
    }
    if (!(s.noise_variance >= 0.0) || !(s.transmit_power >= 0.0)) {
        throw std::domain_error("optimal_beamformer requires non-negative powers");
    }
    BeamformerResult out;
    out.weights.reserve(s.channel.size());
    for (const auto& h : s.channel) {
        out.weights.push_back(h / h_norm_sq);
    }
    out.lagrange_multiplier = 2.0 / h_norm_sq;
    out.snr = s.transmit_power * h_norm_sq;
    out.noise_power = s.noise_variance * norm_squared(out.weights);
    out.constraint_residual = std::abs(hermitian_dot(out.weights, s.channel) -
                                       Complex{1.0, 0.0});
    return out;
}

/// Output noise power theta^2 ||w||^2 of an arbitrary weight vector.
inline double beamformer_noise_power(const BeamScenario& s,
                                     std::span<const Complex> weights) {
    return s.noise_variance * norm_squared(weights);
}

} // namespace secsim
