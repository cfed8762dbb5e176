#pragma once

#include <cmath>
#include <vector>

#include "secsim/secrecy.hpp"
#include "secsim/units.hpp"

namespace secsim {

/// Flat-fading massive MIMO downlink with mutual coupling. The user channel
/// is composed as H = a * (coupling + multipath) * b, where the coupling
/// term is |h|bar * exp(j 2 pi alpha); the eavesdropper link is described by
/// its channel gain magnitude directly.
struct MimoScenario {
    int bs_antennas = 1; // i
    int ue_antennas = 1; // j
    Complex front_end_bs{1.0, 0.0}; // a
    Complex front_end_ue{1.0, 0.0}; // b
    double coupling_magnitude = 0.0;    // |h|bar
    double coupling_phase_cycles = 0.0; // alpha
    Complex multipath{0.0, 0.0};        // h~
    double tx_power_w = 1.0;            // O_tx
    double noise_user_w = 1.0;          // sigma_j^2
    double noise_eve_w = 1.0;           // sigma_in^2
    std::vector<Complex> interference_amplitudes; // I_k
    double coupling_power_w = 0.0;      // O_mc
    double eve_channel_gain = 0.0;      // |H_{i,in}|^2
    double eve_interference_w = 0.0;    // i_p'
    double secrecy_threshold_bps_hz = 0.0;

    Complex user_channel() const {
        const Complex coupling = coupling_magnitude * unit_phasor(coupling_phase_cycles);
        return front_end_bs * (coupling + multipath) * front_end_ue;
    }

    double interference_power_w() const { // i_p = sum |I_k|^2
        double s = 0.0;
        for (const auto& amp : interference_amplitudes) {
            s += std::norm(amp);
        }
        return s;
    }

    double front_end_power_w() const { // O_F = |a|^2 |b|^2
        return std::norm(front_end_bs) * std::norm(front_end_ue);
    }
};

struct MimoReport {
    SecrecyMetrics metrics;
    double user_channel_gain = 0.0;    // |H_{i,j}|^2
    double interference_power_w = 0.0; // i_p
    double front_end_power_w = 0.0;    // O_F
    double total_power_w = 0.0;        // O_T budget
};

/// User and intruder SINRs, capacities and the clamped secrecy rate, with the
/// total power budget O_T = O_tx + sigma^2 + i_p + O_mc + O_F alongside.
inline MimoReport mimo_secrecy(const MimoScenario& s) {
    if (!(s.noise_user_w > 0.0) || !(s.noise_eve_w > 0.0)) {
        throw std::domain_error("mimo_secrecy requires positive noise powers");
    }
    if (!(s.tx_power_w >= 0.0) || !(s.coupling_power_w >= 0.0) ||
        !(s.eve_channel_gain >= 0.0) || !(s.eve_interference_w >= 0.0)) {
        throw std::domain_error("mimo_secrecy requires non-negative powers");
    }
    MimoReport report;
    report.user_channel_gain = std::norm(s.user_channel());
    report.interference_power_w = s.interference_power_w();
    report.front_end_power_w = s.front_end_power_w();
    report.total_power_w = s.tx_power_w + s.noise_user_w + report.interference_power_w +
                           s.coupling_power_w + report.front_end_power_w;

    const LinearRatio rho_user = sinr(SinrInputs{
        Watts{s.tx_power_w * report.user_channel_gain}, Watts{s.noise_user_w},
        Watts{report.interference_power_w}, Watts{s.coupling_power_w}});
    const LinearRatio rho_eve = sinr(SinrInputs{
        Watts{s.tx_power_w * s.eve_channel_gain}, Watts{s.noise_eve_w},
        Watts{s.eve_interference_w}, Watts{s.coupling_power_w}});
    report.metrics = make_secrecy_metrics(rho_user, rho_eve, s.secrecy_threshold_bps_hz);
    return report;
}

} // namespace secsim
