#pragma once

#include <cmath>
#include <stdexcept>

#include "secsim/secrecy.hpp"

namespace secsim {

/// Relay-assisted D2D scenario in the second transmission phase.
///
/// Channel-gain fields carry squared magnitudes |h|^2 and each symbol of the
/// phase-2 SINR expressions is bound to a named link:
///   gain_cell_to_bs    |h_c^BS|^2   cellular user -> base station
///   gain_relay_to_bs   |h_2^BS|^2   relay transmission -> base station
///   gain_d1_to_bs      |h_1^BS|^2   device D_1 -> base station
///   gain_cell_to_d2    |h_c^2|^2    cellular user -> device D_2
///   gain_d1_to_relay   |h_1^Dr|^2   device D_1 -> relay D_r
///   gain_d1_to_d2      |h_1^2|^2    device D_1 -> device D_2
///   gain_cell_to_eve   |h_c^M|^2    cellular user -> eavesdropper
///   gain_d1_to_eve     |h_1^M|^2    device D_1 -> eavesdropper
struct D2dScenario {
    double power_cellular_w = 1.0; // o_c
    double power_d1_w = 1.0;       // o_1
    double power_relay_w = 1.0;    // o_Dr
    double cooperation_level = 0.5; // l in [0, 1]
    double noise_variance_w = 1.0;  // sigma^2

    double gain_cell_to_bs = 1.0;
    double gain_relay_to_bs = 1.0;
    double gain_d1_to_bs = 1.0;
    double gain_cell_to_d2 = 1.0;
    double gain_d1_to_relay = 1.0;
    double gain_d1_to_d2 = 1.0;
    double gain_cell_to_eve = 1.0;
    double gain_d1_to_eve = 1.0;

    // normalized gains entering the per-channel rate
    double norm_gain_main = 1.0;       // g_x^c, D2D link on its own channel
    double norm_gain_main_cross = 0.0; // g_c^x', cross gain into the D2D receiver
    double norm_gain_eve = 0.0;        // g_M^c, leakage to the eavesdropper
    double norm_gain_eve_cross = 0.0;  // g_c^M', cross gain into the eavesdropper

    int reused_channels = 1; // c
    int total_channels = 2;  // n, requires c < n
    double secrecy_threshold_bps_hz = 0.0;

    void validate() const {
        if (!(cooperation_level >= 0.0 && cooperation_level <= 1.0)) {
            throw std::domain_error("cooperation level must lie in [0, 1]");
        }
        if (!(noise_variance_w > 0.0)) {
            throw std::domain_error("d2d noise variance must be positive");
        }
        if (!(reused_channels < total_channels)) {
            throw std::domain_error("reused channel count must be below the channel total");
        }
        const double gains[] = {gain_cell_to_bs, gain_relay_to_bs, gain_d1_to_bs,
                                gain_cell_to_d2, gain_d1_to_relay, gain_d1_to_d2,
                                gain_cell_to_eve, gain_d1_to_eve, norm_gain_main,
                                norm_gain_main_cross, norm_gain_eve, norm_gain_eve_cross};
        for (double g : gains) {
            if (!(g >= 0.0)) {
                throw std::domain_error("d2d channel gains must be non-negative");
            }
        }
        if (!(power_cellular_w >= 0.0 && power_d1_w >= 0.0 && power_relay_w >= 0.0)) {
            throw std::domain_error("d2d powers must be non-negative");
        }
    }
};

struct D2dReport {
    // phase-2 instantaneous SINRs, implemented exactly as printed with
    // explicit left-to-right grouping:
    //   N_BS = o_c G_cb / (o_Dr G_rb + (l (o_1 G_1b + o_c G_cb + s2) + (1-l)) + s2)
    //   N_2  = o_Dr G_c2 (l o_1 G_1r + (1-l)) / (o_c G_c2 + l o_Dr G_12 (s2 + o_c G_c2) + s2)
    //   N_M  = o_Dr G_cM (l o_1 G_1r + (1-l)) / (o_c G_cM + l o_Dr G_1M (s2 + o_c G_cM) + s2)
    double sinr_bs = 0.0;  // N_BS
    double sinr_d2 = 0.0;  // N_2
    double sinr_eve = 0.0; // N_M
    double rate_main_bps_hz = 0.0; // D_c
    SecrecyMetrics metrics;        // secrecy rate D_{c,M} with clamping
};

inline D2dReport d2d_secrecy(const D2dScenario& s) {
    s.validate();
    const double l = s.cooperation_level;
    const double s2 = s.noise_variance_w;
    D2dReport out;

    {
        const double denom = s.power_relay_w * s.gain_relay_to_bs +
                             (l * (s.power_d1_w * s.gain_d1_to_bs +
                                   s.power_cellular_w * s.gain_cell_to_bs + s2) +
                              (1.0 - l)) +
                             s2;
        if (!(denom > 0.0)) {
            throw std::domain_error("d2d BS SINR denominator must be positive");
        }
        out.sinr_bs = s.power_cellular_w * s.gain_cell_to_bs / denom;
    }
    const double relay_factor = l * s.power_d1_w * s.gain_d1_to_relay + (1.0 - l);
    {
        const double denom = s.power_cellular_w * s.gain_cell_to_d2 +
                             l * s.power_relay_w * s.gain_d1_to_d2 *
                                 (s2 + s.power_cellular_w * s.gain_cell_to_d2) +
                             s2;
        if (!(denom > 0.0)) {
            throw std::domain_error("d2d D_2 SINR denominator must be positive");
        }
        out.sinr_d2 = s.power_relay_w * s.gain_cell_to_d2 * relay_factor / denom;
    }
    {
        const double denom = s.power_cellular_w * s.gain_cell_to_eve +
                             l * s.power_relay_w * s.gain_d1_to_eve *
                                 (s2 + s.power_cellular_w * s.gain_cell_to_eve) +
                             s2;
        if (!(denom > 0.0)) {
            throw std::domain_error("d2d eavesdropper SINR denominator must be positive");
        }
        out.sinr_eve = s.power_relay_w * s.gain_cell_to_eve * relay_factor / denom;
    }

    // per-channel rate and secrecy rate in interference-normalized form
    const double oc = s.power_cellular_w;
    const double sinr_main_norm = oc * s.norm_gain_main / (1.0 + oc * s.norm_gain_main_cross);
    const double sinr_eve_norm = oc * s.norm_gain_eve / (1.0 + oc * s.norm_gain_eve_cross);
    out.rate_main_bps_hz = std::log2(1.0 + sinr_main_norm);
    out.metrics = make_secrecy_metrics(LinearRatio{sinr_main_norm},
                                       LinearRatio{sinr_eve_norm},
                                       s.secrecy_threshold_bps_hz);
    return out;
}

} // namespace secsim
