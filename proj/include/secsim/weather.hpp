#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "secsim/propagation.hpp"
#include "secsim/units.hpp"

namespace secsim {

/// Gaussian-sum curve fit evaluated against log10(frequency):
/// sum_i A_i exp(-((log10 f - C_i) / W_i)^2) + slope * log10 f + offset.
struct CoefficientFit {
    struct Term {
        double amplitude; // delta
        double center;    // zeta
        double width;     // theta
    };
    std::vector<Term> terms;
    double slope = 0.0;  // a_k
    double offset = 0.0; // b_k

    double evaluate(double freq_ghz) const {
        if (!(freq_ghz > 0.0)) {
            throw std::domain_error("curve fit frequency must be positive");
        }
        const double lf = std::log10(freq_ghz);
        double s = 0.0;
        for (const auto& t : terms) {
            const double z = (lf - t.center) / t.width;
            s += t.amplitude * std::exp(-z * z);
        }
        return s + slope * lf + offset;
    }
};

/// Curve fits for the four power-law rain coefficients. The theta fits are in
/// log10 domain; the epsilon fits produce the exponent directly.
struct RainCurveFit {
    CoefficientFit log10_theta_h;
    CoefficientFit log10_theta_v;
    CoefficientFit eps_h;
    CoefficientFit eps_v;

    double theta_h(double freq_ghz) const { return std::pow(10.0, log10_theta_h.evaluate(freq_ghz)); }
    double theta_v(double freq_ghz) const { return std::pow(10.0, log10_theta_v.evaluate(freq_ghz)); }
    double epsilon_h(double freq_ghz) const { return eps_h.evaluate(freq_ghz); }
    double epsilon_v(double freq_ghz) const { return eps_v.evaluate(freq_ghz); }
};

/// Standard power-law coefficient fit (horizontal/vertical polarization),
/// valid across 1-1000 GHz. Replaceable via a coefficient CSV at run time.
inline const RainCurveFit& default_rain_curve_fit() {
    static const RainCurveFit fit{
        // log10 theta, horizontal
        {{{-5.33980, -0.10008, 1.13098},
          {-0.35351, 1.26970, 0.45400},
          {-0.23789, 0.86036, 0.15354},
          {-0.94158, 0.64552, 0.16817}},
         -0.18961,
         0.71147},
        // log10 theta, vertical
        {{{-3.80595, 0.56934, 0.81061},
          {-3.44965, -0.22911, 0.51059},
          {-0.39902, 0.73042, 0.11899},
          {0.50167, 1.07319, 0.27195}},
         -0.16398,
         0.63297},
        // epsilon, horizontal
        {{{-0.14318, 1.82442, -0.55187},
          {0.29591, 0.77564, 0.19822},
          {0.32177, 0.63773, 0.13164},
          {-5.37610, -0.96230, 1.47828},
          {16.1721, -3.29980, 3.43990}},
         0.67849,
         -1.95537},
        // epsilon, vertical
        {{{-0.07771, 2.33840, -0.76284},
          {0.56727, 0.95545, 0.54039},
          {-0.20238, 1.14520, 0.26809},
          {-48.2991, 0.791669, 0.116226},
          {48.5833, 0.791459, 0.116479}},
         -0.053739,
         0.83433}};
    return fit;
}

/// One tabulated coefficient row.
struct RainCoefficientRow {
    double freq_ghz;
    double theta_h;
    double theta_v;
    double eps_h;
    double eps_v;
};

/// Frequency grid the built-in table is sampled on.
inline std::vector<double> default_rain_table_frequencies() {
    return {1,  1.2, 1.5, 1.8, 2,  2.2, 2.5, 2.8, 3,  3.2, 3.5, 4,  4.5, 5, 5.5,
            6,  6.5, 7,   8,   9,  10,  11,  12,  13, 14,  15,  16, 18,  20, 22,
            25, 28,  30,  32,  35, 40,  45,  50,  55, 60,  64,  70, 80,  90, 100};
}

/// Power-law rain coefficient table. Lookup interpolates between rows in the
/// log-frequency domain (log10 theta and epsilon both linear in log10 f),
/// matching the log-domain construction of the fit.
class RainCoefficientTable {
public:
    static RainCoefficientTable from_rows(std::vector<RainCoefficientRow> rows) {
        RainCoefficientTable table;
        table.rows_ = std::move(rows);
        table.validate();
        return table;
    }

    static RainCoefficientTable from_curve_fit(const RainCurveFit& fit,
                                               std::span<const double> frequencies_ghz) {
        std::vector<RainCoefficientRow> rows;
        rows.reserve(frequencies_ghz.size());
        for (double f : frequencies_ghz) {
            rows.push_back({f, fit.theta_h(f), fit.theta_v(f), fit.epsilon_h(f),
                            fit.epsilon_v(f)});
        }
        RainCoefficientTable table;
        table.rows_ = std::move(rows);
        table.fit_ = fit;
        table.validate();
        return table;
    }

    /// Parses `freq_ghz,theta_h,theta_v,eps_h,eps_v` rows; errors carry the
    /// source name and one-based line number.
    static RainCoefficientTable from_csv(std::istream& in,
                                         std::string_view source_name = "<stream>") {
        std::vector<RainCoefficientRow> rows;
        std::string line;
        std::size_t line_no = 0;
        bool header_seen = false;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line.front() == '#') {
                continue;
            }
            if (!header_seen) {
                if (strip(line) != "freq_ghz,theta_h,theta_v,eps_h,eps_v") {
                    throw std::runtime_error(
                        std::string(source_name) + ":" + std::to_string(line_no) +
                        ": expected header \"freq_ghz,theta_h,theta_v,eps_h,eps_v\"");
                }
                header_seen = true;
                continue;
            }
            rows.push_back(parse_row(line, source_name, line_no));
        }
        if (!header_seen) {
            throw std::runtime_error(std::string(source_name) + ":1: missing header row");
        }
        RainCoefficientTable table;
        table.rows_ = std::move(rows);
        table.validate();
        return table;
    }

    static RainCoefficientTable from_csv_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) {
            throw std::runtime_error("cannot open rain coefficient file: " + path);
        }
        return from_csv(in, path);
    }

    /// Built-in table: the default curve fit sampled on the default grid.
    static const RainCoefficientTable& builtin() {
        static const RainCoefficientTable table = [] {
            const auto freqs = default_rain_table_frequencies();
            return from_curve_fit(default_rain_curve_fit(), freqs);
        }();
        return table;
    }

    /// Interpolated coefficients at the given frequency. Frequencies outside
    /// the tabulated coverage are a range error.
    RainCoefficientRow coefficients_at(double freq_ghz) const {
        if (!(freq_ghz >= rows_.front().freq_ghz && freq_ghz <= rows_.back().freq_ghz)) {
            throw std::out_of_range("frequency " + std::to_string(freq_ghz) +
                                    " GHz outside coefficient table coverage [" +
                                    std::to_string(rows_.front().freq_ghz) + ", " +
                                    std::to_string(rows_.back().freq_ghz) + "] GHz");
        }
        auto hi = std::lower_bound(rows_.begin(), rows_.end(), freq_ghz,
                                   [](const RainCoefficientRow& row, double f) {
                                       return row.freq_ghz < f;
                                   });
        if (hi == rows_.begin()) {
            return *hi;
        }
        auto lo = hi - 1;
        if (hi == rows_.end() || hi->freq_ghz == freq_ghz) {
            return hi == rows_.end() ? *lo : *hi;
        }
        const double t = (std::log10(freq_ghz) - std::log10(lo->freq_ghz)) /
                         (std::log10(hi->freq_ghz) - std::log10(lo->freq_ghz));
        auto lerp = [t](double a, double b) { return a + t * (b - a); };
        auto log_lerp = [&](double a, double b) {
            return std::pow(10.0, lerp(std::log10(a), std::log10(b)));
        };
        return RainCoefficientRow{freq_ghz, log_lerp(lo->theta_h, hi->theta_h),
                                  log_lerp(lo->theta_v, hi->theta_v),
                                  lerp(lo->eps_h, hi->eps_h), lerp(lo->eps_v, hi->eps_v)};
    }

    std::span<const RainCoefficientRow> rows() const { return rows_; }
    const std::optional<RainCurveFit>& curve_fit() const { return fit_; }

private:
    void validate() const {
        if (rows_.size() < 2) {
            throw std::runtime_error("rain coefficient table needs at least two rows");
        }
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (!(rows_[i].theta_h > 0.0) || !(rows_[i].theta_v > 0.0)) {
                throw std::runtime_error("rain coefficient theta values must be positive");
            }
            if (i > 0 && !(rows_[i].freq_ghz > rows_[i - 1].freq_ghz)) {
                throw std::runtime_error(
                    "rain coefficient frequencies must be strictly increasing");
            }
        }
        if (!(rows_.front().freq_ghz <= 1.0 && rows_.back().freq_ghz >= 100.0)) {
            throw std::runtime_error(
                "rain coefficient table must cover at least 1-100 GHz");
        }
    }

    static std::string strip(std::string s) {
        auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
        while (!s.empty() && issp(s.back())) s.pop_back();
        std::size_t b = 0;
        while (b < s.size() && issp(s[b])) ++b;
        return s.substr(b);
    }

    static RainCoefficientRow parse_row(const std::string& line,
                                        std::string_view source, std::size_t line_no) {
        std::vector<double> fields;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                if (strip(cell.substr(used)).size() != 0) {
                    throw std::invalid_argument(cell);
                }
                fields.push_back(v);
            } catch (const std::exception&) {
                throw std::runtime_error(std::string(source) + ":" +
                                         std::to_string(line_no) +
                                         ": cannot parse numeric field \"" + cell + "\"");
            }
        }
        if (fields.size() != 5) {
            throw std::runtime_error(std::string(source) + ":" + std::to_string(line_no) +
                                     ": expected 5 comma-separated fields, got " +
                                     std::to_string(fields.size()));
        }
        return RainCoefficientRow{fields[0], fields[1], fields[2], fields[3], fields[4]};
    }

    std::vector<RainCoefficientRow> rows_;
    std::optional<RainCurveFit> fit_;
};

/// Depth decomposition of the rain-affected path, in km.
struct RainDepths {
    double scattering_km = 0.0;   // d_SC
    double absorption_km = 0.0;   // d_AB
    double refraction_km = 0.0;   // d_REF
    double polarization_km = 0.0; // d_POL

    double total_km() const noexcept {
        return scattering_km + absorption_km + refraction_km + polarization_km;
    }
};

struct RainCondition {
    double rate_mm_per_h = 0.0;        // R
    double elevation_deg = 0.0;        // path elevation angle
    double polarization_tilt_deg = 0.0; // tilt relative to horizontal
    RainDepths depths;

    void validate() const {
        if (!(rate_mm_per_h >= 0.0)) {
            throw std::domain_error("rain rate must be non-negative");
        }
        if (!(depths.scattering_km >= 0.0 && depths.absorption_km >= 0.0 &&
              depths.refraction_km >= 0.0 && depths.polarization_km >= 0.0)) {
            throw std::domain_error("rain depths must be non-negative");
        }
    }
};

/// Depth decomposition of the dust-affected path, in km.
struct DustDepths {
    double scattering_km = 0.0;         // D_SC
    double absorption_km = 0.0;         // D_AB
    double cross_polarization_km = 0.0; // D_CP

    double total_km() const noexcept {
        return scattering_km + absorption_km + cross_polarization_km;
    }
};

struct DustCondition {
    double attenuation_db_per_km = 0.0; // V
    DustDepths depths;

    void validate() const {
        if (!(attenuation_db_per_km >= 0.0)) {
            throw std::domain_error("dust attenuation constant must be non-negative");
        }
        if (!(depths.scattering_km >= 0.0 && depths.absorption_km >= 0.0 &&
              depths.cross_polarization_km >= 0.0)) {
            throw std::domain_error("dust depths must be non-negative");
        }
    }
};

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

/// Path-geometry mix of the horizontal/vertical theta coefficients:
/// (theta_H + theta_V + (theta_H - theta_V) cos^2(alpha) cos(2 beta)) / 2.
inline double mix_polarization_theta(double theta_h, double theta_v,
                                     double elevation_deg, double tilt_deg) {
    const double ca = std::cos(deg_to_rad(elevation_deg));
    const double c2b = std::cos(2.0 * deg_to_rad(tilt_deg));
    return (theta_h + theta_v + (theta_h - theta_v) * ca * ca * c2b) / 2.0;
}

/// Companion mix for the exponent, weighted by the theta coefficients:
/// (tH eH + tV eV + (tH eH - tV eV) cos^2(alpha) cos(2 beta)) / (2 theta).
inline double mix_polarization_epsilon(double theta_h, double theta_v, double eps_h,
                                       double eps_v, double elevation_deg,
                                       double tilt_deg) {
    const double theta = mix_polarization_theta(theta_h, theta_v, elevation_deg, tilt_deg);
    if (!(theta > 0.0)) {
        throw std::domain_error("mixed theta coefficient must be positive");
    }
    const double ca = std::cos(deg_to_rad(elevation_deg));
    const double c2b = std::cos(2.0 * deg_to_rad(tilt_deg));
    const double th_eh = theta_h * eps_h;
    const double tv_ev = theta_v * eps_v;
    return (th_eh + tv_ev + (th_eh - tv_ev) * ca * ca * c2b) / (2.0 * theta);
}

/// Specific rain attenuation theta * R^epsilon in dB/km, with the
/// polarization-mixed coefficients at the carrier frequency.
inline double rain_specific_attenuation(const RainCoefficientTable& table,
                                        double freq_ghz, const RainCondition& cond) {
    cond.validate();
    const RainCoefficientRow row = table.coefficients_at(freq_ghz);
    if (cond.rate_mm_per_h == 0.0) {
        return 0.0;
    }
    const double theta = mix_polarization_theta(row.theta_h, row.theta_v,
                                                cond.elevation_deg,
                                                cond.polarization_tilt_deg);
    const double eps = mix_polarization_epsilon(row.theta_h, row.theta_v, row.eps_h,
                                                row.eps_v, cond.elevation_deg,
                                                cond.polarization_tilt_deg);
    return theta * std::pow(cond.rate_mm_per_h, eps);
}

/// Total rain attenuation: specific attenuation times the summed depth
/// decomposition, dB-additive across the four depth components.
inline Decibel rain_total_attenuation(const RainCondition& cond, double n_r_db_per_km) {
    cond.validate();
    if (!(n_r_db_per_km >= 0.0)) {
        throw std::domain_error("specific attenuation must be non-negative");
    }
    return Decibel{n_r_db_per_km * cond.depths.total_km()};
}

/// Total dust attenuation V * (D_SC + D_AB + D_CP) in dB.
inline Decibel dust_total_attenuation(const DustCondition& cond) {
    cond.validate();
    return Decibel{cond.attenuation_db_per_km * cond.depths.total_km()};
}

/// Shadowed received power further reduced by a weather attenuation term.
inline DecibelMilliwatt received_power_with_weather(DecibelMilliwatt pt,
                                                    const PropagationParams& params,
                                                    double distance_m,
                                                    const ShadowSample& shadow,
                                                    Decibel weather_db) {
    if (!(weather_db.value >= 0.0)) {
        throw std::domain_error("weather attenuation must be non-negative");
    }
    const DecibelMilliwatt base = received_power_shadowed(pt, params, distance_m, shadow);
    return DecibelMilliwatt{base.value - weather_db.value};
}

} // namespace secsim
