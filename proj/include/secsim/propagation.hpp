#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "secsim/random.hpp"
#include "secsim/units.hpp"

namespace secsim {

inline constexpr double speed_of_light_m_s = 299792458.0;

/// Path-loss-exponent range for a named deployment scenario class.
struct PathLossExponentRange {
    std::string_view scenario;
    double psi_min;
    double psi_max;
};

/// Named exponent presets, versioned with the data below.
inline constexpr std::string_view path_loss_presets_version = "1";

inline constexpr std::array<PathLossExponentRange, 7> path_loss_exponent_presets{{
    {"urban_macrocell", 3.7, 6.5},
    {"building_same_floor", 1.6, 3.5},
    {"urban_microcell", 2.7, 3.5},
    {"building_multiple_floors", 2.0, 6.0},
    {"home", 3.0, 3.0},
    {"store", 1.8, 2.2},
    {"factory", 1.6, 3.3},
}};

inline const PathLossExponentRange* find_path_loss_preset(std::string_view scenario) {
    for (const auto& row : path_loss_exponent_presets) {
        if (row.scenario == scenario) {
            return &row;
        }
    }
    return nullptr;
}

/// Writes the preset table as `scenario,psi_min,psi_max` rows.
inline void export_path_loss_presets_csv(std::ostream& out) {
    out << "scenario,psi_min,psi_max\n";
    for (const auto& row : path_loss_exponent_presets) {
        out << row.scenario << ',' << row.psi_min << ',' << row.psi_max << '\n';
    }
}

/// Throws std::out_of_range naming the preset when psi falls outside the
/// class range; unknown class names are also rejected.
inline void require_exponent_in_class(std::string_view scenario_class, double psi) {
    const auto* preset = find_path_loss_preset(scenario_class);
    if (preset == nullptr) {
        throw std::out_of_range("unknown path-loss scenario class \"" +
                                std::string(scenario_class) + "\"");
    }
    if (!(psi >= preset->psi_min && psi <= preset->psi_max)) {
        throw std::out_of_range(
            "path_loss_exponent " + std::to_string(psi) + " outside preset range [" +
            std::to_string(preset->psi_min) + ", " + std::to_string(preset->psi_max) +
            "] for scenario class \"" + std::string(scenario_class) + "\"");
    }
}

/// Reference attenuation constant 20*log10(lambda / r0).
inline Decibel reference_attenuation_db(double wavelength_m, double reference_distance_m) {
    if (!(wavelength_m > 0.0) || !(reference_distance_m > 0.0)) {
        throw std::domain_error("reference attenuation needs positive wavelength and r0");
    }
    return Decibel{20.0 * std::log10(wavelength_m / reference_distance_m)};
}

/// Reference attenuation calibrated so the psi = 2, unit-gain log-distance
/// model coincides exactly with free space: 20*log10(lambda / (4 pi r0)).
inline Decibel free_space_reference_attenuation_db(double wavelength_m,
                                                   double reference_distance_m) {
    if (!(wavelength_m > 0.0) || !(reference_distance_m > 0.0)) {
        throw std::domain_error("reference attenuation needs positive wavelength and r0");
    }
    return Decibel{20.0 *
                   std::log10(wavelength_m / (4.0 * std::numbers::pi * reference_distance_m))};
}

/// Deterministic backbone of every link budget: antenna product, carrier,
/// reference distance, exponent, average-attenuation constant and the
/// log-normal shadowing statistics.
struct PropagationParams {
    double antenna_gain_product = 1.0; // product of field radiation patterns
    double frequency_hz = 0.0;
    double wavelength_m = 0.0; // must equal c / frequency
    double reference_distance_m = 1.0;
    double path_loss_exponent = 2.0;
    Decibel q_db{0.0};        // average-attenuation constant
    Decibel shadow_mean_db{0.0};
    Decibel shadow_std_db{0.0};

    void validate() const {
        if (!(antenna_gain_product > 0.0)) {
            throw std::domain_error("antenna_gain_product must be positive");
        }
        if (!(frequency_hz > 0.0)) {
            throw std::domain_error("frequency must be positive");
        }
        if (!(reference_distance_m > 0.0)) {
            throw std::domain_error("reference_distance must be positive");
        }
        if (!(path_loss_exponent > 0.0)) {
            throw std::domain_error("path_loss_exponent must be positive");
        }
        if (!(shadow_std_db.value >= 0.0)) {
            throw std::domain_error("shadow standard deviation must be non-negative");
        }
        const double expected = speed_of_light_m_s / frequency_hz;
        if (!(std::abs(wavelength_m - expected) <= 1e-9 * expected)) {
            throw std::domain_error("wavelength inconsistent with carrier frequency");
        }
    }
};

/// Fills wavelength from the carrier and defaults q to the reference
/// attenuation constant 20*log10(lambda / r0) when not supplied.
inline PropagationParams make_propagation_params(double frequency_hz,
                                                 double reference_distance_m,
                                                 double path_loss_exponent,
                                                 std::optional<Decibel> q = std::nullopt,
                                                 double antenna_gain_product = 1.0,
                                                 Decibel shadow_mean = Decibel{0.0},
                                                 Decibel shadow_std = Decibel{0.0}) {
    PropagationParams p;
    p.antenna_gain_product = antenna_gain_product;
    p.frequency_hz = frequency_hz;
    p.wavelength_m = frequency_hz > 0.0 ? speed_of_light_m_s / frequency_hz : 0.0;
    p.reference_distance_m = reference_distance_m;
    p.path_loss_exponent = path_loss_exponent;
    p.shadow_mean_db = shadow_mean;
    p.shadow_std_db = shadow_std;
    p.q_db = q ? *q : reference_attenuation_db(p.wavelength_m, reference_distance_m);
    p.validate();
    return p;
}

/// Free-space path loss -10*log10(A_t * lambda^2 / (4 pi r)^2), in dB.
inline Decibel free_space_path_loss(const PropagationParams& params, double distance_m) {
    if (!(distance_m > 0.0)) {
        throw std::domain_error("free_space_path_loss requires distance > 0");
    }
    const double denom = 4.0 * std::numbers::pi * distance_m;
    const double ratio =
        params.antenna_gain_product * params.wavelength_m * params.wavelength_m /
        (denom * denom);
    return Decibel{-10.0 * std::log10(ratio)};
}

/// Free-space path gain, the negation of the loss.
inline Decibel free_space_path_gain(const PropagationParams& params, double distance_m) {
    return Decibel{-free_space_path_loss(params, distance_m).value};
}

/// Log-distance received power P_t + q_dB - 10 psi log10(r / r0). The model
/// is undefined inside the reference distance, so r < r0 is rejected rather
/// than extrapolated.
inline DecibelMilliwatt log_distance_received_power(DecibelMilliwatt pt,
                                                    const PropagationParams& params,
                                                    double distance_m) {
    if (!(distance_m >= params.reference_distance_m)) {
        throw std::domain_error("log-distance model invalid inside reference distance");
    }
    const double loss =
        10.0 * params.path_loss_exponent *
        std::log10(distance_m / params.reference_distance_m);
    return DecibelMilliwatt{pt.value + params.q_db.value - loss};
}

/// One realized shadowing loss, with the stream identity that produced it.
struct ShadowSample {
    Decibel phi_db{0.0};
    StreamId stream;
};

/// Gaussian draw in the dB domain: phi_dB ~ N(mu, sigma^2). The linear-scale
/// mean then satisfies 10 log10 E[phi] = mu + sigma^2 / (2 Delta^2) with
/// Delta = 10 / ln 10.
inline ShadowSample draw_shadowing(const PropagationParams& params, RandomStream& stream) {
    const StreamId id = stream.id();
    const double phi =
        stream.normal(params.shadow_mean_db.value, params.shadow_std_db.value);
    return ShadowSample{Decibel{phi}, id};
}

/// Combined log-distance path loss and shadowing: the shadowing loss phi_dB
/// subtracts from the unshadowed received power.
inline DecibelMilliwatt received_power_shadowed(DecibelMilliwatt pt,
                                                const PropagationParams& params,
                                                double distance_m,
                                                const ShadowSample& shadow) {
    const DecibelMilliwatt base = log_distance_received_power(pt, params, distance_m);
    return DecibelMilliwatt{base.value - shadow.phi_db.value};
}

} // namespace secsim
