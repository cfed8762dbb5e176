#pragma once

#include <cmath>

#include "secsim/secrecy.hpp"
#include "secsim/units.hpp"

namespace secsim {

/// Energy-detector sensing configuration for the spectrum-sensing stage.
struct SensingParams {
    double detection_threshold = 1.0;    // th
    double received_snr = 1.0;           // P, linear
    double sensing_time_s = 1e-3;        // mu
    double sampling_frequency_hz = 1e6;  // f_N
    double noise_variance = 1.0;         // sigma^2

    double sample_count() const noexcept { return sensing_time_s * sampling_frequency_hz; }
};

struct SensingProbabilities {
    double detection = 0.0;   // P(A_1)
    double false_alarm = 0.0; // P(A_0)
};

/// Cooperative spectrum-sharing scenario: a secondary transmitter lends a
/// fraction chi of its power to the primary system and transmits its own data
/// with the remainder, with the primary transmitter treated as the intruder.
struct SharingScenario {
    double total_power_w = 1.0;        // o
    double cooperation_fraction = 0.5; // chi in [0, 1]
    double noise_variance_w = 1.0;     // n
    // phase-1 broadcast channels (primary transmitter to each node)
    Complex h_primary_rx{1.0, 0.0};    // h_pr
    Complex h_secondary_tx{1.0, 0.0};  // h_st
    Complex h_secondary_rx{1.0, 0.0};  // h_sr
    // phase-2 channels (secondary transmitter to each node)
    Complex h2_primary_rx{1.0, 0.0};   // h_pr'
    Complex h2_secondary_rx{1.0, 0.0}; // h_sr'
    Complex h2_primary_tx{1.0, 0.0};   // h_pt'
    SensingParams sensing{};
    double secrecy_threshold_bps_hz = 0.0;

    double transmit_snr() const { return total_power_w / noise_variance_w; } // P = o/n
    double gain_secondary() const { return std::norm(h2_secondary_rx); }     // g_sr
    double gain_intruder() const { return std::norm(h2_primary_tx); }        // g_pt
};

/// Detection / false-alarm probabilities of the energy detector:
///   P(A_1) = Q(((th / sigma^2) - P - 1) * sqrt(mu f_N / (2P + 1)))
///   P(A_0) = Q(((th / sigma^2) - 1) * sqrt(mu f_N))
inline SensingProbabilities sensing_probabilities(const SensingParams& p) {
    if (!(p.sample_count() > 0.0)) {
        throw std::domain_error("sensing requires mu * f_N > 0");
    }
    if (!(p.noise_variance > 0.0)) {
        throw std::domain_error("sensing requires positive noise variance");
    }
    const double n = p.sample_count();
    const double normalized = p.detection_threshold / p.noise_variance;
    SensingProbabilities out;
    out.detection = q_function((normalized - p.received_snr - 1.0) *
                               std::sqrt(n / (2.0 * p.received_snr + 1.0)));
    out.false_alarm = q_function((normalized - 1.0) * std::sqrt(n));
    return out;
}

inline SensingProbabilities sensing_probabilities(const SharingScenario& s) {
    return sensing_probabilities(s.sensing);
}

/// Secrecy rate of the secondary link over two transmission phases:
/// P_sr = (1 - chi) P g_sr, half-rate capacities for the two time slots, and
/// SR = (D_sr - D_pt)^+ against the primary-transmitter intruder.
inline SecrecyMetrics sharing_secrecy(const SharingScenario& s) {
    if (!(s.cooperation_fraction >= 0.0 && s.cooperation_fraction <= 1.0)) {
        throw std::domain_error("cooperation fraction must lie in [0, 1]");
    }
    if (!(s.noise_variance_w > 0.0)) {
        throw std::domain_error("sharing_secrecy requires positive noise variance");
    }
    const double remaining = (1.0 - s.cooperation_fraction) * s.transmit_snr();
    const double p_sr = remaining * s.gain_secondary();
    const double p_pt = remaining * s.gain_intruder();

    SecrecyMetrics m;
    m.sinr_main = LinearRatio{p_sr};
    m.sinr_eve = LinearRatio{p_pt};
    // two-phase transmission: each rate carries the 1/2 time-slot factor
    m.capacity_main_bps_hz = 0.5 * std::log2(1.0 + p_sr);
    m.capacity_eve_bps_hz = 0.5 * std::log2(1.0 + p_pt);
    m.secrecy_rate_bps_hz = secrecy_rate(m.capacity_main_bps_hz, m.capacity_eve_bps_hz);
    m.threshold_bps_hz = s.secrecy_threshold_bps_hz;
    m.secure = m.secrecy_rate_bps_hz > m.threshold_bps_hz;
    return m;
}

} // namespace secsim
