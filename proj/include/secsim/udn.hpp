#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "secsim/errors.hpp"
#include "secsim/fading.hpp"
#include "secsim/monte_carlo.hpp"
#include "secsim/point_process.hpp"

namespace secsim {

/// Ultra-dense network field: base stations, users and eavesdroppers thrown
/// as independent homogeneous Poisson point processes on the window.
struct UdnField {
    double bs_density = 1e-4;   // Psi_bs, points per m^2
    double user_density = 1e-4; // Psi_ms
    double eve_density = 1e-5;  // Psi_ev, must stay below user density
    double tx_power_w = 1.0;    // P
    double path_loss_exponent = 4.0; // gamma
    double noise_w = 1e-3;      // sigma^2
    FadingDescriptor main_fading = rician_fading(10.0, 1.0); // h_s
    FadingDescriptor eve_fading = rician_fading(10.0, 1.0);  // h_ev
    double activity_probability = 1.0; // per-BS thinning for the active set
    Window window{2000.0, 2000.0};

    void validate() const {
        if (!(bs_density >= 0.0 && user_density >= 0.0 && eve_density >= 0.0)) {
            throw std::domain_error("udn densities must be non-negative");
        }
        if (!(eve_density < user_density)) {
            throw std::domain_error("udn requires eavesdropper density below user density");
        }
        if (!(tx_power_w >= 0.0)) {
            throw std::domain_error("udn transmit power must be non-negative");
        }
        if (!(path_loss_exponent > 0.0)) {
            throw std::domain_error("udn path-loss exponent must be positive");
        }
        if (!(noise_w > 0.0)) {
            throw std::domain_error("udn noise power must be positive");
        }
        if (!(activity_probability >= 0.0 && activity_probability <= 1.0)) {
            throw std::domain_error("udn activity probability must lie in [0, 1]");
        }
        if (!(window.area() > 0.0)) {
            throw std::domain_error("udn window must have positive area");
        }
    }
};

/// Averaged ln-domain rates (nats/s/Hz) of the main and leakage links, plus
/// the clamped average secrecy rate.
struct UdnEstimate {
    McEstimate main_rate;  // S_m average
    McEstimate eve_rate;   // S_ev average
    double secrecy_rate = 0.0; // (S_m - S_ev)^+
    std::uint64_t empty_bs_trials = 0;
};

namespace detail {

inline double udn_rate(double power, double gain, double dist, double gamma,
                       double noise, double interference) {
    return std::log(1.0 + power * gain * std::pow(dist, -gamma) /
                              (noise + interference));
}

} // namespace detail

/// Monte-Carlo estimate of the average main-link and leakage rates.
///
/// Per trial: the base-station process is sampled once. The main link places
/// the typical user at the origin, serves it from the nearest base station at
/// distance a and aggregates interference from the remaining active stations.
/// The leakage link conditions the serving station at the origin, takes the
/// nearest eavesdropper at distance b and aggregates interference from the
/// sampled stations (all "other cells") at that eavesdropper, each active
/// with the configured probability. Rates are ln-domain; an empty
/// eavesdropper field contributes zero leakage, and a trial with no base
/// stations contributes to neither average (all-empty runs raise
/// EstimationError).
inline UdnEstimate udn_average_secrecy(const UdnField& field, StreamId base,
                                       std::uint64_t trials) {
    field.validate();
    if (trials < 1) {
        throw std::domain_error("udn_average_secrecy requires trials >= 1");
    }
    McAccumulator main_acc;
    McAccumulator eve_acc;
    std::uint64_t empty_bs = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        RandomStream stream(base.seed, base.stream_index + t);
        const PointField bs_field = sample_ppp(field.bs_density, field.window, stream);
        if (bs_field.points.empty()) {
            ++empty_bs;
            continue;
        }

        // main link: typical user at the origin
        std::size_t serving = 0;
        double a = distance(bs_field.points[0], {0.0, 0.0});
        for (std::size_t i = 1; i < bs_field.points.size(); ++i) {
            const double d = distance(bs_field.points[i], {0.0, 0.0});
            if (d < a) {
                a = d;
                serving = i;
            }
        }
        const double h_s = draw_fading_power(field.main_fading, stream);
        double interference_main = 0.0;
        for (std::size_t i = 0; i < bs_field.points.size(); ++i) {
            if (i == serving) continue;
            if (field.activity_probability < 1.0 &&
                stream.uniform() >= field.activity_probability) {
                continue;
            }
            const double d = distance(bs_field.points[i], {0.0, 0.0});
            interference_main += field.tx_power_w *
                                 draw_fading_power(field.main_fading, stream) *
                                 std::pow(d, -field.path_loss_exponent);
        }
        main_acc.add(detail::udn_rate(field.tx_power_w, h_s, a, field.path_loss_exponent,
                                      field.noise_w, interference_main));

        // leakage link: serving station at the origin, nearest eavesdropper
        const PointField eve_field = sample_ppp(field.eve_density, field.window, stream);
        if (eve_field.points.empty()) {
            eve_acc.add(0.0);
        } else {
            std::size_t nearest = 0;
            double b = distance(eve_field.points[0], {0.0, 0.0});
            for (std::size_t i = 1; i < eve_field.points.size(); ++i) {
                const double d = distance(eve_field.points[i], {0.0, 0.0});
                if (d < b) {
                    b = d;
                    nearest = i;
                }
            }
            const Point2 eve_pos = eve_field.points[nearest];
            const double h_ev = draw_fading_power(field.eve_fading, stream);
            double interference_eve = 0.0;
            for (const auto& bs : bs_field.points) {
                if (field.activity_probability < 1.0 &&
                    stream.uniform() >= field.activity_probability) {
                    continue;
                }
                const double d = distance(bs, eve_pos);
                if (d <= 0.0) continue;
                interference_eve += field.tx_power_w *
                                    draw_fading_power(field.eve_fading, stream) *
                                    std::pow(d, -field.path_loss_exponent);
            }
            eve_acc.add(detail::udn_rate(field.tx_power_w, h_ev, b,
                                         field.path_loss_exponent, field.noise_w,
                                         interference_eve));
        }
    }
    if (main_acc.count() == 0) {
        throw EstimationError("udn_average_secrecy: base-station process empty in "
                              "every trial; enlarge the window or density");
    }
    UdnEstimate out;
    out.main_rate = main_acc.estimate();
    out.eve_rate = eve_acc.estimate();
    out.secrecy_rate = std::max(out.main_rate.mean - out.eve_rate.mean, 0.0);
    out.empty_bs_trials = empty_bs;
    return out;
}

} // namespace secsim
