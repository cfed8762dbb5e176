#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>

#include "secsim/errors.hpp"
#include "secsim/fading.hpp"
#include "secsim/monte_carlo.hpp"
#include "secsim/units.hpp"

namespace secsim {

/// Signal, noise, interference and mutual-coupling powers entering one SINR.
struct SinrInputs {
    Watts signal_power;
    Watts noise_power;
    Watts interference_power;
    Watts coupling_power;
};

/// signal / (noise + interference + coupling). Noise must be strictly
/// positive, which also keeps the denominator positive.
inline LinearRatio sinr(const SinrInputs& in) {
    const double denom = in.noise_power.value() + in.interference_power.value() +
                         in.coupling_power.value();
    if (!(in.noise_power.value() > 0.0) || !(denom > 0.0)) {
        throw std::domain_error("sinr requires positive noise power");
    }
    return LinearRatio{in.signal_power.value() / denom};
}

/// Shannon capacity log2(1 + sinr) in bits/s/Hz.
inline double capacity_bps_hz(LinearRatio sinr_value) {
    return std::log2(1.0 + sinr_value.value());
}

/// Clamped capacity difference (c_main - c_eve)^+.
inline double secrecy_rate(double c_main_bps_hz, double c_eve_bps_hz) {
    if (!(c_main_bps_hz >= 0.0) || !(c_eve_bps_hz >= 0.0)) {
        throw std::domain_error("secrecy_rate requires non-negative capacities");
    }
    return std::max(c_main_bps_hz - c_eve_bps_hz, 0.0);
}

/// Secrecy figures for one link pair.
struct SecrecyMetrics {
    LinearRatio sinr_main;
    LinearRatio sinr_eve;
    double capacity_main_bps_hz = 0.0;
    double capacity_eve_bps_hz = 0.0;
    double secrecy_rate_bps_hz = 0.0;
    double threshold_bps_hz = 0.0;
    bool secure = false; // secrecy rate strictly above the threshold
};

inline SecrecyMetrics make_secrecy_metrics(LinearRatio main, LinearRatio eve,
                                           double threshold_bps_hz = 0.0) {
    SecrecyMetrics m;
    m.sinr_main = main;
    m.sinr_eve = eve;
    m.capacity_main_bps_hz = capacity_bps_hz(main);
    m.capacity_eve_bps_hz = capacity_bps_hz(eve);
    m.secrecy_rate_bps_hz = secrecy_rate(m.capacity_main_bps_hz, m.capacity_eve_bps_hz);
    m.threshold_bps_hz = threshold_bps_hz;
    m.secure = m.secrecy_rate_bps_hz > threshold_bps_hz;
    return m;
}

/// Strict comparison: a rate exactly at the threshold is insecure.
inline bool secrecy_check(const SecrecyMetrics& m) {
    if (!(m.secrecy_rate_bps_hz >= 0.0) || !(m.threshold_bps_hz >= 0.0)) {
        throw std::domain_error("secrecy_check requires non-negative rates");
    }
    return m.secrecy_rate_bps_hz > m.threshold_bps_hz;
}

/// Secrecy-outage problem statement: target rate and the SINR distributions
/// of the main and eavesdropper links (the descriptors parameterize the SINR
/// law directly, mean_power being the mean SINR).
struct SopInputs {
    double target_rate_bps_hz = 0.0; // C_r
    FadingDescriptor main_sinr = rayleigh_fading(1.0);
    FadingDescriptor eve_sinr = deterministic_fading(1.0);
    double bound_threshold = 0.0; // rho_th for the piecewise split
};

struct SopEstimate {
    double probability = 0.0;
    double standard_error = 0.0;
    std::uint64_t trials = 0;
};

/// Generic sampled secrecy-outage estimator: per trial draws both SINRs,
/// forms C_s = (log2(1+rho_p) - log2(1+rho_e))^+ and counts C_s < C_r.
template <typename MainSampler, typename EveSampler>
SopEstimate secrecy_outage_probability_sampled(MainSampler&& draw_main,
                                               EveSampler&& draw_eve,
                                               double target_rate_bps_hz,
                                               StreamId base, std::uint64_t trials) {
    if (!(target_rate_bps_hz >= 0.0)) {
        throw std::domain_error("target secrecy rate must be non-negative");
    }
    const McEstimate est = mc_run(
        [&](RandomStream& stream) {
            const double rho_p = draw_main(stream);
            const double rho_e = draw_eve(stream);
            const double cs = secrecy_rate(std::log2(1.0 + rho_p), std::log2(1.0 + rho_e));
            return cs < target_rate_bps_hz ? 1.0 : 0.0;
        },
        trials, base);
    return SopEstimate{est.mean, est.standard_error, est.trials};
}

/// Monte-Carlo secrecy outage probability Pr[C_s < C_r]; the normative
/// evaluator for this artifact.
inline SopEstimate secrecy_outage_probability(const SopInputs& in, StreamId base,
                                              std::uint64_t trials) {
    return secrecy_outage_probability_sampled(
        [&](RandomStream& s) { return draw_fading_power(in.main_sinr, s); },
        [&](RandomStream& s) { return draw_fading_power(in.eve_sinr, s); },
        in.target_rate_bps_hz, base, trials);
}

namespace detail {

/// Adaptive Simpson quadrature.
template <typename Fn>
double simpson_recurse(Fn&& f, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

template <typename Fn>
double integrate(Fn&& f, double a, double b, double tol = 1e-10, int depth = 48) {
    if (!(b > a)) {
        return 0.0;
    }
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// Power-gain density for a Rician law with the given K and mean.
inline double rician_power_pdf(double x, double k, double mean) {
    if (x < 0.0 || !(mean > 0.0)) {
        return 0.0;
    }
    const double a = (1.0 + k) / mean;
    const double arg = 2.0 * std::sqrt(k * (1.0 + k) * x / mean);
    return a * std::exp(-k - a * x) * std::cyl_bessel_i(0.0, arg);
}

} // namespace detail

/// CDF of the SINR law described by a fading descriptor.
inline double sinr_cdf(const FadingDescriptor& d, double x) {
    if (x < 0.0) {
        return 0.0;
    }
    switch (d.kind) {
    case FadingKind::deterministic:
        return x >= d.mean_power ? 1.0 : 0.0;
    case FadingKind::rayleigh:
        return d.mean_power > 0.0 ? 1.0 - std::exp(-x / d.mean_power) : 1.0;
    case FadingKind::rician: {
        if (!(d.mean_power > 0.0)) {
            return 1.0;
        }
        const double v = detail::integrate(
            [&](double t) { return detail::rician_power_pdf(t, d.rician_k, d.mean_power); },
            0.0, x, 1e-12);
        return std::min(std::max(v, 0.0), 1.0);
    }
    }
    throw std::logic_error("unreachable fading kind");
}

/// Outage level mapped onto the main-SINR axis: omega_R = 2^{C_r} (1 + R) - 1.
inline double sop_outage_level(double target_rate_bps_hz, double eve_sinr) {
    return std::exp2(target_rate_bps_hz) * (1.0 + eve_sinr) - 1.0;
}

/// One-dimensional outage quadrature under the CDF reading: the main-SINR CDF
/// evaluated at omega_R, integrated against the eavesdropper SINR density.
/// This cross-checks the Monte-Carlo path; it is not the normative evaluator.
inline double secrecy_outage_quadrature(const SopInputs& in) {
    if (!(in.target_rate_bps_hz >= 0.0)) {
        throw std::domain_error("target secrecy rate must be non-negative");
    }
    const auto main_cdf = [&](double x) { return sinr_cdf(in.main_sinr, x); };
    switch (in.eve_sinr.kind) {
    case FadingKind::deterministic:
        return main_cdf(sop_outage_level(in.target_rate_bps_hz, in.eve_sinr.mean_power));
    case FadingKind::rayleigh: {
        const double mean = in.eve_sinr.mean_power;
        if (!(mean > 0.0)) {
            return main_cdf(sop_outage_level(in.target_rate_bps_hz, 0.0));
        }
        // substitute u = exp(-R / mean) so the half-line becomes (0, 1]
        return detail::integrate(
            [&](double u) {
                const double uu = std::min(std::max(u, 1e-300), 1.0 - 1e-16);
                const double r = -mean * std::log(uu);
                return main_cdf(sop_outage_level(in.target_rate_bps_hz, r));
            },
            0.0, 1.0, 1e-10);
    }
    case FadingKind::rician:
        throw ConfigError("secrecy_outage_quadrature: rician eavesdropper SINR "
                          "is not supported; use the Monte-Carlo evaluator");
    }
    throw std::logic_error("unreachable fading kind");
}

/// Piecewise view of the same quadrature, split at the bound point
/// T(rho_th) = 2^{-C_r} (1 + rho_th) - 1 on the eavesdropper axis.
struct SopPiecewise {
    double below_bound = 0.0;
    double above_bound = 0.0;
    double total = 0.0;
    double bound_point = 0.0;
};

inline SopPiecewise secrecy_outage_quadrature_piecewise(const SopInputs& in) {
    SopPiecewise out;
    out.bound_point = std::exp2(-in.target_rate_bps_hz) * (1.0 + in.bound_threshold) - 1.0;
    out.total = secrecy_outage_quadrature(in);
    const auto main_cdf = [&](double x) { return sinr_cdf(in.main_sinr, x); };
    if (out.bound_point < 0.0) {
        out.below_bound = 0.0;
        out.above_bound = out.total;
        return out;
    }
    switch (in.eve_sinr.kind) {
    case FadingKind::deterministic: {
        const double f = main_cdf(sop_outage_level(in.target_rate_bps_hz,
                                                   in.eve_sinr.mean_power));
        if (in.eve_sinr.mean_power < out.bound_point) {
            out.below_bound = f;
        } else {
            out.above_bound = f;
        }
        return out;
    }
    case FadingKind::rayleigh: {
        const double mean = in.eve_sinr.mean_power;
        if (!(mean > 0.0)) {
            out.below_bound = out.bound_point > 0.0 ? out.total : 0.0;
            out.above_bound = out.total - out.below_bound;
            return out;
        }
        out.below_bound = detail::integrate(
            [&](double r) {
                return main_cdf(sop_outage_level(in.target_rate_bps_hz, r)) *
                       std::exp(-r / mean) / mean;
            },
            0.0, out.bound_point, 1e-11);
        out.above_bound = out.total - out.below_bound;
        return out;
    }
    case FadingKind::rician:
        throw ConfigError("secrecy_outage_quadrature_piecewise: rician eavesdropper "
                          "SINR is not supported; use the Monte-Carlo evaluator");
    }
    throw std::logic_error("unreachable fading kind");
}

} // namespace secsim
