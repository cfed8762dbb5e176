#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "secsim/attack.hpp"
#include "secsim/beamforming.hpp"
#include "secsim/d2d.hpp"
#include "secsim/errors.hpp"
#include "secsim/iot.hpp"
#include "secsim/mimo.hpp"
#include "secsim/propagation.hpp"
#include "secsim/result_table.hpp"
#include "secsim/secrecy.hpp"
#include "secsim/spectrum_sharing.hpp"
#include "secsim/udn.hpp"
#include "secsim/weather.hpp"

namespace secsim {

enum class ModelKind { mimo, sharing, beam, d2d, udn, iot };
enum class WeatherKind { none, rain, dust };
enum class AttackKind { none, hd_fd, ar_ad };

struct MonteCarloConfig {
    std::uint64_t seed = 1;
    std::uint64_t trials = 10000;
};

/// Declarative link budget for scenarios that run a propagation chain.
struct LinkBudgetConfig {
    std::string scenario_class = "urban_macrocell";
    double path_loss_exponent = 3.7;
    double frequency_hz = 28e9;
    double reference_distance_m = 1.0;
    double antenna_gain_product = 1.0;
    double tx_power_dbm = 30.0;
    double shadow_mean_db = 0.0;
    double shadow_std_db = 0.0;
    std::optional<double> q_db; // default: reference attenuation from lambda, r0

    PropagationParams to_params() const {
        std::optional<Decibel> q;
        if (q_db) {
            q = Decibel{*q_db};
        }
        return make_propagation_params(frequency_hz, reference_distance_m,
                                       path_loss_exponent, q, antenna_gain_product,
                                       Decibel{shadow_mean_db}, Decibel{shadow_std_db});
    }
};

struct RainConfig {
    RainCondition condition;
    std::optional<std::string> coefficient_file; // resolved against the scenario dir
};

struct WeatherConfig {
    WeatherKind kind = WeatherKind::none;
    bool applies_to_eavesdropper = false; // intruder stages weather on the victim link
    RainConfig rain;
    DustCondition dust;
};

struct HdFdConfig {
    AttackParams params;
    bool simulate = false; // also run the RRC state-machine simulation
};

struct ArAdConfig {
    double user_distance_m = 200.0;
    double eve_distance_m = 400.0;
    double noise_dbm = -90.0;
    double capacity_threshold_bps_hz = 1.0; // C_T
};

struct SweepConfig {
    std::string parameter; // dot path into the scenario document
    std::vector<double> values;
};

/// Fully validated scenario. `raw` keeps the source document so sweeps can
/// re-apply parameter values and re-validate per point.
struct ScenarioConfig {
    ModelKind model = ModelKind::d2d;
    MonteCarloConfig monte_carlo;
    std::optional<LinkBudgetConfig> propagation;
    WeatherConfig weather;
    AttackKind attack = AttackKind::none;
    HdFdConfig hd_fd;
    ArAdConfig ar_ad;

    MimoScenario mimo;
    SharingScenario sharing;
    BeamScenario beam;
    D2dScenario d2d;
    UdnField udn;
    IotScenario iot;

    std::optional<SweepConfig> sweep;

    nlohmann::json raw;
    std::filesystem::path base_dir;
    std::string source_name = "<memory>";
};

namespace detail {

/// Cursor over a JSON object that tracks its path for diagnostics and
/// rejects unknown keys.
class JsonView {
public:
    JsonView(const nlohmann::json& node, std::string path, std::string source)
        : node_(&node), path_(std::move(path)), source_(std::move(source)) {
        if (!node.is_object()) {
            fail("expected an object");
        }
    }

    bool has(const char* key) const { return node_->contains(key); }

    void check_keys(std::initializer_list<const char*> allowed) const {
        for (auto it = node_->begin(); it != node_->end(); ++it) {
            bool known = false;
            for (const char* k : allowed) {
                if (it.key() == k) {
                    known = true;
                    break;
                }
            }
            if (!known) {
                fail("unknown key \"" + it.key() + "\"");
            }
        }
    }

    JsonView block(const char* key) const {
        if (!has(key)) {
            fail(std::string("missing required block \"") + key + "\"");
        }
        return JsonView((*node_)[key], join(key), source_);
    }

    std::optional<JsonView> optional_block(const char* key) const {
        if (!has(key)) {
            return std::nullopt;
        }
        return JsonView((*node_)[key], join(key), source_);
    }

    double number(const char* key, double fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const auto& v = (*node_)[key];
        if (!v.is_number()) {
            fail(std::string("key \"") + key + "\" must be a number");
        }
        return v.get<double>();
    }

    double number_in(const char* key, double fallback, double lo, double hi) const {
        const double v = number(key, fallback);
        if (!(v >= lo && v <= hi)) {
            fail(std::string("key \"") + key + "\" = " + format_number(v) +
                 " outside allowed range [" + format_number(lo) + ", " +
                 format_number(hi) + "]");
        }
        return v;
    }

    std::uint64_t unsigned_int(const char* key, std::uint64_t fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const auto& v = (*node_)[key];
        if (!v.is_number_unsigned()) {
            fail(std::string("key \"") + key + "\" must be a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }

    bool boolean(const char* key, bool fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const auto& v = (*node_)[key];
        if (!v.is_boolean()) {
            fail(std::string("key \"") + key + "\" must be a boolean");
        }
        return v.get<bool>();
    }

    std::string string_or(const char* key, std::string fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const auto& v = (*node_)[key];
        if (!v.is_string()) {
            fail(std::string("key \"") + key + "\" must be a string");
        }
        return v.get<std::string>();
    }

    Complex complex_or(const char* key, Complex fallback) const {
        if (!has(key)) {
            return fallback;
        }
        return parse_complex((*node_)[key], join(key));
    }

    std::vector<Complex> complex_list(const char* key) const {
        std::vector<Complex> out;
        if (!has(key)) {
            return out;
        }
        const auto& v = (*node_)[key];
        if (!v.is_array()) {
            fail(std::string("key \"") + key + "\" must be an array of [re, im] pairs");
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(parse_complex(v[i], join(key) + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    std::vector<double> number_list(const char* key) const {
        std::vector<double> out;
        if (!has(key)) {
            return out;
        }
        const auto& v = (*node_)[key];
        if (!v.is_array()) {
            fail(std::string("key \"") + key + "\" must be an array of numbers");
        }
        for (const auto& x : v) {
            if (!x.is_number()) {
                fail(std::string("key \"") + key + "\" must contain numbers only");
            }
            out.push_back(x.get<double>());
        }
        return out;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ConfigError(source_ + ": " + (path_.empty() ? "" : path_ + ": ") + message);
    }

    const std::string& path() const noexcept { return path_; }

private:
    Complex parse_complex(const nlohmann::json& v, const std::string& where) const {
        if (v.is_number()) {
            return Complex{v.get<double>(), 0.0};
        }
        if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
            return Complex{v[0].get<double>(), v[1].get<double>()};
        }
        throw ConfigError(source_ + ": " + where +
                          ": expected a number or an [re, im] pair");
    }

    std::string join(const char* key) const {
        return path_.empty() ? std::string(key) : path_ + "." + key;
    }

    const nlohmann::json* node_;
    std::string path_;
    std::string source_;
};

inline FadingDescriptor parse_fading(const JsonView& block, const char* kind_key,
                                     const char* k_key, const char* power_key) {
    const std::string kind = block.string_or(kind_key, "rayleigh");
    const double mean = block.number(power_key, 1.0);
    if (kind == "rayleigh") {
        return rayleigh_fading(mean);
    }
    if (kind == "rician") {
        return rician_fading(block.number(k_key, 10.0), mean);
    }
    if (kind == "deterministic") {
        return deterministic_fading(mean);
    }
    block.fail(std::string("key \"") + kind_key +
               "\" must be one of rayleigh, rician, deterministic");
}

} // namespace detail

/// Parses and validates a scenario document. Every module invariant is
/// enforced here, with diagnostics naming the offending key and constraint.
inline ScenarioConfig parse_scenario(const nlohmann::json& doc,
                                     const std::filesystem::path& base_dir = ".",
                                     const std::string& source_name = "<memory>") {
    using detail::JsonView;
    ScenarioConfig cfg;
    cfg.raw = doc;
    cfg.base_dir = base_dir;
    cfg.source_name = source_name;

    JsonView root(doc, "", source_name);
    root.check_keys({"model", "monte_carlo", "propagation", "weather", "attack", "mimo",
                     "sharing", "beam", "d2d", "udn", "iot", "sweep"});

    const std::string model = root.string_or("model", "");
    if (model == "mimo") cfg.model = ModelKind::mimo;
    else if (model == "sharing") cfg.model = ModelKind::sharing;
    else if (model == "beam") cfg.model = ModelKind::beam;
    else if (model == "d2d") cfg.model = ModelKind::d2d;
    else if (model == "udn") cfg.model = ModelKind::udn;
    else if (model == "iot") cfg.model = ModelKind::iot;
    else root.fail("key \"model\" must be one of mimo, sharing, beam, d2d, udn, iot");

    if (auto mc = root.optional_block("monte_carlo")) {
        mc->check_keys({"seed", "trials"});
        cfg.monte_carlo.seed = mc->unsigned_int("seed", cfg.monte_carlo.seed);
        cfg.monte_carlo.trials = mc->unsigned_int("trials", cfg.monte_carlo.trials);
        if (cfg.monte_carlo.trials < 1) {
            mc->fail("key \"trials\" must be >= 1");
        }
    }

    if (auto prop = root.optional_block("propagation")) {
        prop->check_keys({"class", "path_loss_exponent", "frequency_hz",
                          "reference_distance_m", "antenna_gain_product", "tx_power_dbm",
                          "shadow_mean_db", "shadow_std_db", "q_db"});
        LinkBudgetConfig link;
        link.scenario_class = prop->string_or("class", link.scenario_class);
        link.path_loss_exponent =
            prop->number("path_loss_exponent", link.path_loss_exponent);
        link.frequency_hz = prop->number("frequency_hz", link.frequency_hz);
        link.reference_distance_m =
            prop->number("reference_distance_m", link.reference_distance_m);
        link.antenna_gain_product =
            prop->number("antenna_gain_product", link.antenna_gain_product);
        link.tx_power_dbm = prop->number("tx_power_dbm", link.tx_power_dbm);
        link.shadow_mean_db = prop->number("shadow_mean_db", link.shadow_mean_db);
        link.shadow_std_db = prop->number("shadow_std_db", link.shadow_std_db);
        if (prop->has("q_db")) {
            link.q_db = prop->number("q_db", 0.0);
        }
        try {
            require_exponent_in_class(link.scenario_class, link.path_loss_exponent);
            link.to_params();
        } catch (const std::exception& e) {
            prop->fail(e.what());
        }
        cfg.propagation = link;
    }

    if (auto weather = root.optional_block("weather")) {
        weather->check_keys({"type", "applies_to_eavesdropper", "rain", "dust"});
        const std::string type = weather->string_or("type", "none");
        cfg.weather.applies_to_eavesdropper =
            weather->boolean("applies_to_eavesdropper", false);
        if (type == "none") {
            cfg.weather.kind = WeatherKind::none;
        } else if (type == "rain") {
            cfg.weather.kind = WeatherKind::rain;
        } else if (type == "dust") {
            cfg.weather.kind = WeatherKind::dust;
        } else {
            weather->fail("key \"type\" must be one of none, rain, dust");
        }
        if (auto rain = weather->optional_block("rain")) {
            rain->check_keys({"rate_mm_per_h", "elevation_deg", "polarization_tilt_deg",
                              "scattering_depth_km", "absorption_depth_km",
                              "refraction_depth_km", "polarization_depth_km",
                              "coefficient_file"});
            auto& c = cfg.weather.rain.condition;
            c.rate_mm_per_h = rain->number("rate_mm_per_h", 0.0);
            c.elevation_deg = rain->number("elevation_deg", 0.0);
            c.polarization_tilt_deg = rain->number("polarization_tilt_deg", 0.0);
            c.depths.scattering_km = rain->number("scattering_depth_km", 0.0);
            c.depths.absorption_km = rain->number("absorption_depth_km", 0.0);
            c.depths.refraction_km = rain->number("refraction_depth_km", 0.0);
            c.depths.polarization_km = rain->number("polarization_depth_km", 0.0);
            if (rain->has("coefficient_file")) {
                cfg.weather.rain.coefficient_file = rain->string_or("coefficient_file", "");
            }
            try {
                c.validate();
            } catch (const std::exception& e) {
                rain->fail(e.what());
            }
        }
        if (auto dust = weather->optional_block("dust")) {
            dust->check_keys({"attenuation_db_per_km", "scattering_depth_km",
                              "absorption_depth_km", "cross_polarization_depth_km"});
            auto& c = cfg.weather.dust;
            c.attenuation_db_per_km = dust->number("attenuation_db_per_km", 0.0);
            c.depths.scattering_km = dust->number("scattering_depth_km", 0.0);
            c.depths.absorption_km = dust->number("absorption_depth_km", 0.0);
            c.depths.cross_polarization_km =
                dust->number("cross_polarization_depth_km", 0.0);
            try {
                c.validate();
            } catch (const std::exception& e) {
                dust->fail(e.what());
            }
        }
    }

    if (auto attack = root.optional_block("attack")) {
        attack->check_keys({"type", "hd_fd", "ar_ad"});
        const std::string type = attack->string_or("type", "none");
        if (type == "none") {
            cfg.attack = AttackKind::none;
        } else if (type == "hd_fd") {
            cfg.attack = AttackKind::hd_fd;
        } else if (type == "ar_ad") {
            cfg.attack = AttackKind::ar_ad;
        } else {
            attack->fail("key \"type\" must be one of none, hd_fd, ar_ad");
        }
        if (auto hd = attack->optional_block("hd_fd")) {
            hd->check_keys({"p_dl", "p_ul", "intervals", "successes", "simulate"});
            cfg.hd_fd.params.p_dl = hd->number_in("p_dl", 0.7, 0.0, 1.0);
            cfg.hd_fd.params.p_ul = hd->number_in("p_ul", 0.7, 0.0, 1.0);
            cfg.hd_fd.params.intervals =
                static_cast<unsigned>(hd->unsigned_int("intervals", 8));
            cfg.hd_fd.params.successes =
                static_cast<unsigned>(hd->unsigned_int("successes", 4));
            cfg.hd_fd.simulate = hd->boolean("simulate", false);
            try {
                cfg.hd_fd.params.validate();
            } catch (const std::exception& e) {
                hd->fail(e.what());
            }
        }
        if (auto ar = attack->optional_block("ar_ad")) {
            ar->check_keys({"user_distance_m", "eve_distance_m", "noise_dbm",
                            "capacity_threshold_bps_hz"});
            cfg.ar_ad.user_distance_m = ar->number("user_distance_m", 200.0);
            cfg.ar_ad.eve_distance_m = ar->number("eve_distance_m", 400.0);
            cfg.ar_ad.noise_dbm = ar->number("noise_dbm", -90.0);
            cfg.ar_ad.capacity_threshold_bps_hz =
                ar->number("capacity_threshold_bps_hz", 1.0);
        }
        if (cfg.attack == AttackKind::ar_ad && !cfg.propagation) {
            attack->fail("attack type \"ar_ad\" requires a propagation block");
        }
    }

    if (auto mimo = root.optional_block("mimo")) {
        mimo->check_keys({"bs_antennas", "ue_antennas", "front_end_bs", "front_end_ue",
                          "coupling_magnitude", "coupling_phase_cycles", "multipath",
                          "tx_power_w", "noise_user_w", "noise_eve_w",
                          "interference_amplitudes", "coupling_power_w",
                          "eve_channel_gain", "eve_interference_w",
                          "secrecy_threshold_bps_hz"});
        auto& m = cfg.mimo;
        m.bs_antennas = static_cast<int>(mimo->unsigned_int("bs_antennas", 1));
        m.ue_antennas = static_cast<int>(mimo->unsigned_int("ue_antennas", 1));
        m.front_end_bs = mimo->complex_or("front_end_bs", m.front_end_bs);
        m.front_end_ue = mimo->complex_or("front_end_ue", m.front_end_ue);
        m.coupling_magnitude = mimo->number("coupling_magnitude", 0.0);
        m.coupling_phase_cycles = mimo->number("coupling_phase_cycles", 0.0);
        m.multipath = mimo->complex_or("multipath", Complex{1.0, 0.0});
        m.tx_power_w = mimo->number("tx_power_w", 1.0);
        m.noise_user_w = mimo->number("noise_user_w", 1.0);
        m.noise_eve_w = mimo->number("noise_eve_w", 1.0);
        m.interference_amplitudes = mimo->complex_list("interference_amplitudes");
        m.coupling_power_w = mimo->number("coupling_power_w", 0.0);
        m.eve_channel_gain = mimo->number("eve_channel_gain", 0.5);
        m.eve_interference_w = mimo->number("eve_interference_w", 0.0);
        m.secrecy_threshold_bps_hz = mimo->number("secrecy_threshold_bps_hz", 0.0);
        try {
            mimo_secrecy(m);
        } catch (const std::exception& e) {
            mimo->fail(e.what());
        }
    } else if (cfg.model == ModelKind::mimo) {
        cfg.mimo.multipath = Complex{1.0, 0.0};
    }

    if (auto sharing = root.optional_block("sharing")) {
        sharing->check_keys({"total_power_w", "cooperation_fraction", "noise_variance_w",
                             "h_primary_rx", "h_secondary_tx", "h_secondary_rx",
                             "h2_primary_rx", "h2_secondary_rx", "h2_primary_tx",
                             "sensing", "secrecy_threshold_bps_hz"});
        auto& s = cfg.sharing;
        s.total_power_w = sharing->number("total_power_w", 1.0);
        s.cooperation_fraction = sharing->number_in("cooperation_fraction", 0.5, 0.0, 1.0);
        s.noise_variance_w = sharing->number("noise_variance_w", 1.0);
        s.h_primary_rx = sharing->complex_or("h_primary_rx", s.h_primary_rx);
        s.h_secondary_tx = sharing->complex_or("h_secondary_tx", s.h_secondary_tx);
        s.h_secondary_rx = sharing->complex_or("h_secondary_rx", s.h_secondary_rx);
        s.h2_primary_rx = sharing->complex_or("h2_primary_rx", s.h2_primary_rx);
        s.h2_secondary_rx = sharing->complex_or("h2_secondary_rx", s.h2_secondary_rx);
        s.h2_primary_tx = sharing->complex_or("h2_primary_tx", s.h2_primary_tx);
        s.secrecy_threshold_bps_hz = sharing->number("secrecy_threshold_bps_hz", 0.0);
        if (auto sensing = sharing->optional_block("sensing")) {
            sensing->check_keys({"detection_threshold", "received_snr", "sensing_time_s",
                                 "sampling_frequency_hz", "noise_variance"});
            s.sensing.detection_threshold = sensing->number("detection_threshold", 1.0);
            s.sensing.received_snr = sensing->number("received_snr", 1.0);
            s.sensing.sensing_time_s = sensing->number("sensing_time_s", 1e-3);
            s.sensing.sampling_frequency_hz =
                sensing->number("sampling_frequency_hz", 1e6);
            s.sensing.noise_variance = sensing->number("noise_variance", 1.0);
        }
        try {
            sensing_probabilities(s);
            sharing_secrecy(s);
        } catch (const std::exception& e) {
            sharing->fail(e.what());
        }
    }

    if (auto beam = root.optional_block("beam")) {
        beam->check_keys({"channel", "noise_variance", "transmit_power"});
        cfg.beam.channel = beam->complex_list("channel");
        cfg.beam.noise_variance = beam->number("noise_variance", 1.0);
        cfg.beam.transmit_power = beam->number("transmit_power", 1.0);
        if (cfg.beam.channel.empty()) {
            cfg.beam.channel = {Complex{1.0, 0.0}};
        }
        try {
            optimal_beamformer(cfg.beam);
        } catch (const std::exception& e) {
            beam->fail(e.what());
        }
    } else if (cfg.model == ModelKind::beam) {
        cfg.beam.channel = {Complex{1.0, 0.0}};
    }

    if (auto d2d = root.optional_block("d2d")) {
        d2d->check_keys({"power_cellular_w", "power_d1_w", "power_relay_w",
                         "cooperation_level", "noise_variance_w", "gain_cell_to_bs",
                         "gain_relay_to_bs", "gain_d1_to_bs", "gain_cell_to_d2",
                         "gain_d1_to_relay", "gain_d1_to_d2", "gain_cell_to_eve",
                         "gain_d1_to_eve", "norm_gain_main", "norm_gain_main_cross",
                         "norm_gain_eve", "norm_gain_eve_cross", "reused_channels",
                         "total_channels", "secrecy_threshold_bps_hz"});
        auto& d = cfg.d2d;
        d.power_cellular_w = d2d->number("power_cellular_w", 1.0);
        d.power_d1_w = d2d->number("power_d1_w", 1.0);
        d.power_relay_w = d2d->number("power_relay_w", 1.0);
        d.cooperation_level = d2d->number_in("cooperation_level", 0.5, 0.0, 1.0);
        d.noise_variance_w = d2d->number("noise_variance_w", 1.0);
        d.gain_cell_to_bs = d2d->number("gain_cell_to_bs", 1.0);
        d.gain_relay_to_bs = d2d->number("gain_relay_to_bs", 1.0);
        d.gain_d1_to_bs = d2d->number("gain_d1_to_bs", 1.0);
        d.gain_cell_to_d2 = d2d->number("gain_cell_to_d2", 1.0);
        d.gain_d1_to_relay = d2d->number("gain_d1_to_relay", 1.0);
        d.gain_d1_to_d2 = d2d->number("gain_d1_to_d2", 1.0);
        d.gain_cell_to_eve = d2d->number("gain_cell_to_eve", 1.0);
        d.gain_d1_to_eve = d2d->number("gain_d1_to_eve", 1.0);
        d.norm_gain_main = d2d->number("norm_gain_main", 1.0);
        d.norm_gain_main_cross = d2d->number("norm_gain_main_cross", 0.0);
        d.norm_gain_eve = d2d->number("norm_gain_eve", 0.0);
        d.norm_gain_eve_cross = d2d->number("norm_gain_eve_cross", 0.0);
        d.reused_channels = static_cast<int>(d2d->unsigned_int("reused_channels", 1));
        d.total_channels = static_cast<int>(d2d->unsigned_int("total_channels", 2));
        d.secrecy_threshold_bps_hz = d2d->number("secrecy_threshold_bps_hz", 0.0);
        try {
            d.validate();
        } catch (const std::exception& e) {
            d2d->fail(e.what());
        }
    }

    if (auto udn = root.optional_block("udn")) {
        udn->check_keys({"bs_density", "user_density", "eve_density", "tx_power_w",
                         "path_loss_exponent", "noise_w", "rician_k",
                         "activity_probability", "window_width_m", "window_height_m"});
        auto& u = cfg.udn;
        u.bs_density = udn->number("bs_density", 1e-4);
        u.user_density = udn->number("user_density", 1e-4);
        u.eve_density = udn->number("eve_density", 1e-5);
        u.tx_power_w = udn->number("tx_power_w", 1.0);
        u.path_loss_exponent = udn->number("path_loss_exponent", 4.0);
        u.noise_w = udn->number("noise_w", 1e-3);
        const double k = udn->number("rician_k", 10.0);
        u.main_fading = rician_fading(k, 1.0);
        u.eve_fading = rician_fading(k, 1.0);
        u.activity_probability = udn->number_in("activity_probability", 1.0, 0.0, 1.0);
        u.window.width_m = udn->number("window_width_m", 2000.0);
        u.window.height_m = udn->number("window_height_m", 2000.0);
        try {
            u.validate();
        } catch (const std::exception& e) {
            udn->fail(e.what());
        }
    }

    if (auto iot = root.optional_block("iot")) {
        iot->check_keys({"antennas", "users", "user_pool", "mean_snr",
                         "interference_fraction", "interferers_user", "interferers_eve",
                         "fading_kind", "rician_k", "fading_mean_power",
                         "target_rate_bps_hz", "bound_threshold"});
        auto& i = cfg.iot;
        i.antennas = static_cast<int>(iot->unsigned_int("antennas", 1));
        i.users = static_cast<int>(iot->unsigned_int("users", 1));
        i.user_pool = static_cast<int>(iot->unsigned_int("user_pool", i.users));
        i.mean_snr = iot->number("mean_snr", 10.0);
        i.interference_fraction = iot->number_in("interference_fraction", 0.0, 0.0, 1.0);
        i.interferers_user = static_cast<int>(iot->unsigned_int("interferers_user", 0));
        i.interferers_eve = static_cast<int>(iot->unsigned_int("interferers_eve", 0));
        const FadingDescriptor fading = detail::parse_fading(
            *iot, "fading_kind", "rician_k", "fading_mean_power");
        i.user_fading = fading;
        i.eve_fading = fading;
        i.interferer_fading = fading;
        i.target_rate_bps_hz = iot->number("target_rate_bps_hz", 1.0);
        i.bound_threshold = iot->number("bound_threshold", 0.0);
        try {
            i.validate();
        } catch (const std::exception& e) {
            iot->fail(e.what());
        }
    }

    if (auto sweep = root.optional_block("sweep")) {
        sweep->check_keys({"parameter", "values"});
        SweepConfig sc;
        sc.parameter = sweep->string_or("parameter", "");
        if (sc.parameter.empty()) {
            sweep->fail("key \"parameter\" is required");
        }
        sc.values = sweep->number_list("values");
        if (sc.values.empty()) {
            sweep->fail("key \"values\" must list at least one value");
        }
        cfg.sweep = sc;
    }

    return cfg;
}

/// Loads and validates a scenario file. Relative file references inside the
/// scenario resolve against the scenario file's directory.
inline ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open scenario file: " + path.string());
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    const auto base = path.has_parent_path() ? path.parent_path()
                                             : std::filesystem::path(".");
    return parse_scenario(doc, base, path.string());
}

/// Applies command-line overrides to both the parsed config and its source
/// document, so sweep re-parses keep them.
inline void apply_overrides(ScenarioConfig& cfg, std::optional<std::uint64_t> seed,
                            std::optional<std::uint64_t> trials) {
    if (seed) {
        cfg.monte_carlo.seed = *seed;
        cfg.raw["monte_carlo"]["seed"] = *seed;
    }
    if (trials) {
        if (*trials < 1) {
            throw ConfigError("trials override must be >= 1");
        }
        cfg.monte_carlo.trials = *trials;
        cfg.raw["monte_carlo"]["trials"] = *trials;
    }
}

namespace detail {

/// Weather attenuation in dB for the configured condition.
inline Decibel weather_attenuation(const ScenarioConfig& cfg) {
    switch (cfg.weather.kind) {
    case WeatherKind::none:
        return Decibel{0.0};
    case WeatherKind::rain: {
        if (!cfg.propagation) {
            throw ConfigError(cfg.source_name +
                              ": weather.rain requires a propagation block "
                              "(carrier frequency)");
        }
        const RainCoefficientTable* table = &RainCoefficientTable::builtin();
        std::optional<RainCoefficientTable> loaded;
        if (cfg.weather.rain.coefficient_file) {
            std::filesystem::path p = *cfg.weather.rain.coefficient_file;
            if (p.is_relative()) {
                p = cfg.base_dir / p;
            }
            loaded = RainCoefficientTable::from_csv_file(p.string());
            table = &*loaded;
        }
        const double freq_ghz = cfg.propagation->frequency_hz / 1e9;
        const double n_r = rain_specific_attenuation(*table, freq_ghz,
                                                     cfg.weather.rain.condition);
        return rain_total_attenuation(cfg.weather.rain.condition, n_r);
    }
    case WeatherKind::dust:
        return dust_total_attenuation(cfg.weather.dust);
    }
    throw std::logic_error("unreachable weather kind");
}

struct SingleRun {
    std::vector<std::string> columns;
    std::vector<double> values;
};

inline SingleRun run_hd_fd(const ScenarioConfig& cfg) {
    const AttackParams& p = cfg.hd_fd.params;
    const AttackOutcome outcome = miss_rates(p);
    const UlProbabilities ul = ul_probs(p);
    SingleRun run;
    run.columns = {"p_dl", "p_ul", "intervals", "successes", "dl_success_prob",
                   "hd_attack_prob", "ul_success_prob", "ul_intercept_prob", "p_total",
                   "miss_rate_fd", "miss_rate_hd", "hd_advantage",
                   "rates_in_unit_interval"};
    run.values = {p.p_dl,
                  p.p_ul,
                  static_cast<double>(p.intervals),
                  static_cast<double>(p.successes),
                  dl_success_prob(p),
                  hd_attack_prob(p),
                  ul.success,
                  ul.intercept,
                  outcome.p_total,
                  outcome.miss_rate_fd,
                  outcome.miss_rate_hd,
                  outcome.hd_advantage ? 1.0 : 0.0,
                  outcome.rates_in_unit_interval ? 1.0 : 0.0};
    if (cfg.hd_fd.simulate) {
        const RrcSimulationResult sim = rrc_hd_simulation(
            p, StreamId{cfg.monte_carlo.seed, 0}, cfg.monte_carlo.trials);
        run.columns.push_back("empirical_intercept_rate");
        run.columns.push_back("empirical_intercept_rate_stderr");
        run.values.push_back(sim.intercept_rate);
        run.values.push_back(sim.standard_error);
    }
    return run;
}

inline SingleRun run_ar_ad(const ScenarioConfig& cfg) {
    const LinkBudgetConfig& link = *cfg.propagation;
    const PropagationParams params = link.to_params();
    const Decibel weather_db = weather_attenuation(cfg);
    const DecibelMilliwatt pt{link.tx_power_dbm};

    RandomStream user_stream(cfg.monte_carlo.seed, 0);
    RandomStream eve_stream(cfg.monte_carlo.seed, 1);
    const ShadowSample shadow_user = draw_shadowing(params, user_stream);
    const ShadowSample shadow_eve = draw_shadowing(params, eve_stream);

    const DecibelMilliwatt rx_user_clear =
        received_power_shadowed(pt, params, cfg.ar_ad.user_distance_m, shadow_user);
    const DecibelMilliwatt rx_eve_clear =
        received_power_shadowed(pt, params, cfg.ar_ad.eve_distance_m, shadow_eve);
    const bool eve_hit = cfg.weather.applies_to_eavesdropper;
    const DecibelMilliwatt rx_user = received_power_with_weather(
        pt, params, cfg.ar_ad.user_distance_m, shadow_user, weather_db);
    const DecibelMilliwatt rx_eve =
        eve_hit ? received_power_with_weather(pt, params, cfg.ar_ad.eve_distance_m,
                                              shadow_eve, weather_db)
                : rx_eve_clear;

    const double noise_w = dbm_to_watt(DecibelMilliwatt{cfg.ar_ad.noise_dbm}).value();
    const LinearRatio base_sinr_user{dbm_to_watt(rx_user_clear).value() / noise_w};
    const LinearRatio base_sinr_eve{dbm_to_watt(rx_eve_clear).value() / noise_w};
    const SecrecyMetrics baseline = make_secrecy_metrics(base_sinr_user, base_sinr_eve);

    const FavorabilityResult fav = ar_ad_favorability(
        baseline, weather_db, cfg.ar_ad.capacity_threshold_bps_hz, eve_hit);

    SingleRun run;
    run.columns = {"weather_attenuation_db", "rx_power_user_dbm", "rx_power_eve_dbm",
                   "capacity_user_bps_hz", "capacity_eve_bps_hz",
                   "secrecy_capacity_bps_hz", "favorable"};
    run.values = {weather_db.value,  rx_user.value,    rx_eve.value,
                  fav.capacity_user, fav.capacity_eve, fav.secrecy_capacity,
                  fav.favorable ? 1.0 : 0.0};
    return run;
}

inline SingleRun run_model(const ScenarioConfig& cfg) {
    SingleRun run;
    switch (cfg.model) {
    case ModelKind::mimo: {
        const MimoReport r = mimo_secrecy(cfg.mimo);
        run.columns = {"sinr_main", "sinr_eve", "capacity_main_bps_hz",
                       "capacity_eve_bps_hz", "secrecy_rate_bps_hz", "secure",
                       "interference_power_w", "front_end_power_w", "total_power_w"};
        run.values = {r.metrics.sinr_main.value(), r.metrics.sinr_eve.value(),
                      r.metrics.capacity_main_bps_hz, r.metrics.capacity_eve_bps_hz,
                      r.metrics.secrecy_rate_bps_hz, r.metrics.secure ? 1.0 : 0.0,
                      r.interference_power_w, r.front_end_power_w, r.total_power_w};
        return run;
    }
    case ModelKind::sharing: {
        const SensingProbabilities sense = sensing_probabilities(cfg.sharing);
        const SecrecyMetrics m = sharing_secrecy(cfg.sharing);
        run.columns = {"p_detection", "p_false_alarm", "snr_secondary", "snr_intruder",
                       "rate_secondary_bps_hz", "rate_intruder_bps_hz",
                       "secrecy_rate_bps_hz", "secure"};
        run.values = {sense.detection, sense.false_alarm, m.sinr_main.value(),
                      m.sinr_eve.value(), m.capacity_main_bps_hz, m.capacity_eve_bps_hz,
                      m.secrecy_rate_bps_hz, m.secure ? 1.0 : 0.0};
        return run;
    }
    case ModelKind::beam: {
        const BeamformerResult r = optimal_beamformer(cfg.beam);
        run.columns = {"snr", "noise_power", "lagrange_multiplier",
                       "constraint_residual"};
        run.values = {r.snr, r.noise_power, r.lagrange_multiplier,
                      r.constraint_residual};
        return run;
    }
    case ModelKind::d2d: {
        const D2dReport r = d2d_secrecy(cfg.d2d);
        run.columns = {"sinr_bs", "sinr_d2", "sinr_eve", "rate_main_bps_hz",
                       "capacity_eve_bps_hz", "secrecy_rate_bps_hz", "secure"};
        run.values = {r.sinr_bs, r.sinr_d2, r.sinr_eve, r.rate_main_bps_hz,
                      r.metrics.capacity_eve_bps_hz, r.metrics.secrecy_rate_bps_hz,
                      r.metrics.secure ? 1.0 : 0.0};
        return run;
    }
    case ModelKind::udn: {
        const UdnEstimate r = udn_average_secrecy(
            cfg.udn, StreamId{cfg.monte_carlo.seed, 0}, cfg.monte_carlo.trials);
        // secrecy stderr: difference of two independent estimates
        const double secrecy_se =
            std::sqrt(r.main_rate.standard_error * r.main_rate.standard_error +
                      r.eve_rate.standard_error * r.eve_rate.standard_error);
        run.columns = {"avg_main_rate_nats",    "avg_main_rate_nats_stderr",
                       "avg_eve_rate_nats",     "avg_eve_rate_nats_stderr",
                       "avg_secrecy_rate_nats", "avg_secrecy_rate_nats_stderr"};
        run.values = {r.main_rate.mean,    r.main_rate.standard_error,
                      r.eve_rate.mean,     r.eve_rate.standard_error,
                      r.secrecy_rate,      secrecy_se};
        return run;
    }
    case ModelKind::iot: {
        const IotSopResult r = iot_sop(cfg.iot, StreamId{cfg.monte_carlo.seed, 0},
                                       cfg.monte_carlo.trials);
        run.columns = {"sop", "sop_stderr"};
        run.values = {r.probability, r.standard_error};
        return run;
    }
    }
    throw std::logic_error("unreachable model kind");
}

inline SingleRun run_single(const ScenarioConfig& cfg) {
    switch (cfg.attack) {
    case AttackKind::hd_fd:
        return run_hd_fd(cfg);
    case AttackKind::ar_ad:
        return run_ar_ad(cfg);
    case AttackKind::none:
        return run_model(cfg);
    }
    throw std::logic_error("unreachable attack kind");
}

/// Sets `value` at a dot-separated path inside the document, creating
/// intermediate objects. Typos surface as unknown-key diagnostics when the
/// document is re-validated.
inline void set_at_path(nlohmann::json& doc, const std::string& path, double value,
                        const std::string& source) {
    nlohmann::json* node = &doc;
    std::size_t begin = 0;
    while (true) {
        const std::size_t dot = path.find('.', begin);
        const std::string key = path.substr(begin, dot - begin);
        if (key.empty()) {
            throw ConfigError(source + ": sweep.parameter \"" + path +
                              "\" contains an empty segment");
        }
        if (node->is_null()) {
            *node = nlohmann::json::object();
        }
        if (!node->is_object()) {
            throw ConfigError(source + ": sweep.parameter \"" + path +
                              "\" does not address an object member");
        }
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        node = &(*node)[key];
        begin = dot + 1;
    }
}

} // namespace detail

/// Executes the scenario once, or once per sweep value. Sweep points restart
/// their random streams from the configured seed, so rows are independent of
/// sweep order and the whole table is deterministic for a fixed seed.
inline ResultTable run_scenario(const ScenarioConfig& cfg) {
    if (!cfg.sweep) {
        const detail::SingleRun run = detail::run_single(cfg);
        ResultTable table(run.columns);
        table.add_row(run.values);
        return table;
    }
    std::optional<ResultTable> table;
    for (double value : cfg.sweep->values) {
        nlohmann::json doc = cfg.raw;
        doc.erase("sweep");
        detail::set_at_path(doc, cfg.sweep->parameter, value, cfg.source_name);
        ScenarioConfig point;
        try {
            point = parse_scenario(doc, cfg.base_dir, cfg.source_name);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(e.what()) + " (at sweep point " +
                              format_number(value) + ")");
        }
        detail::SingleRun run;
        try {
            run = detail::run_single(point);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw EstimationError(std::string(e.what()) + " (at sweep point " +
                                  format_number(value) + ")");
        }
        if (!table) {
            std::vector<std::string> columns;
            columns.push_back(cfg.sweep->parameter);
            columns.insert(columns.end(), run.columns.begin(), run.columns.end());
            table.emplace(std::move(columns));
        }
        std::vector<double> row;
        row.push_back(value);
        row.insert(row.end(), run.values.begin(), run.values.end());
        table->add_row(row);
    }
    return *table;
}

} // namespace secsim
