#pragma once

#include <cstdint>
#include <stdexcept>

#include "secsim/fading.hpp"
#include "secsim/secrecy.hpp"

namespace secsim {

/// Multiuser IoT downlink with co-channel interference. Interferer powers are
/// tied to the user power by the interference fraction: alpha_i = eta * alpha_m.
struct IotScenario {
    int antennas = 1;  // A at the transmitter
    int users = 1;     // B active users
    int user_pool = 1; // n, B <= n
    double mean_snr = 10.0;            // alpha_m = c_m / N_o, linear
    double interference_fraction = 0.0; // eta in [0, 1]
    int interferers_user = 0; // I_p
    int interferers_eve = 0;  // I_e
    FadingDescriptor user_fading = rayleigh_fading(1.0);       // h_{m,p}
    FadingDescriptor eve_fading = rayleigh_fading(1.0);        // h_{m,e}
    FadingDescriptor interferer_fading = rayleigh_fading(1.0); // h_{i,d}
    double target_rate_bps_hz = 1.0; // C_r
    double bound_threshold = 0.0;    // rho_th

    void validate() const {
        if (!(interference_fraction >= 0.0 && interference_fraction <= 1.0)) {
            throw std::domain_error("interference fraction must lie in [0, 1]");
        }
        if (interferers_user < 0 || interferers_eve < 0) {
            throw std::domain_error("interferer counts must be non-negative");
        }
        if (antennas < 1 || users < 1 || user_pool < users) {
            throw std::domain_error("iot requires antennas >= 1 and users <= pool");
        }
        if (!(mean_snr >= 0.0)) {
            throw std::domain_error("mean SNR must be non-negative");
        }
        if (!(target_rate_bps_hz >= 0.0)) {
            throw std::domain_error("target rate must be non-negative");
        }
    }
};

/// One SINR draw Q = alpha_m |h|^2 / (sum_i eta alpha_m |h_i|^2 + 1) for the
/// valid node or the eavesdropper (noise normalized to unity).
inline double iot_draw_sinr(const IotScenario& s, bool eavesdropper,
                            RandomStream& stream) {
    const FadingDescriptor& own = eavesdropper ? s.eve_fading : s.user_fading;
    const int interferers = eavesdropper ? s.interferers_eve : s.interferers_user;
    const double signal = s.mean_snr * draw_fading_power(own, stream);
    double denom = 1.0;
    for (int i = 0; i < interferers; ++i) {
        denom += s.interference_fraction * s.mean_snr *
                 draw_fading_power(s.interferer_fading, stream);
    }
    return signal / denom;
}

struct IotSopResult {
    double probability = 0.0;
    double standard_error = 0.0;
    std::uint64_t trials = 0;
};

/// Secrecy outage probability of the IoT downlink, via the sampled
/// secrecy-outage estimator over per-trial SINR draws.
inline IotSopResult iot_sop(const IotScenario& s, StreamId base, std::uint64_t trials) {
    s.validate();
    const SopEstimate est = secrecy_outage_probability_sampled(
        [&](RandomStream& stream) { return iot_draw_sinr(s, false, stream); },
        [&](RandomStream& stream) { return iot_draw_sinr(s, true, stream); },
        s.target_rate_bps_hz, base, trials);
    return IotSopResult{est.probability, est.standard_error, est.trials};
}

} // namespace secsim
