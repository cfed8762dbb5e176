// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit status is the failure count.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "secsim/secsim.hpp"
#include "test_support.hpp"

using namespace secsim;
using secsim::test::ks_critical_1pct;
using secsim::test::ks_statistic;

namespace {

struct CriterionResult {
    bool pass = false;
    std::string detail;
    /// raw numeric outputs of any stochastic computation, used by the
    /// determinism criterion for bit-exact comparison
    std::vector<double> fingerprint;
};

struct Check {
    bool ok = true;
    std::string first_failure;

    void expect(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            first_failure = what;
        }
    }
};

std::vector<double> enumerate_pmf(unsigned n, double p) {
    std::vector<double> pmf(n + 1, 0.0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        double prob = 1.0;
        unsigned ones = 0;
        for (unsigned bit = 0; bit < n; ++bit) {
            if (mask & (std::uint64_t{1} << bit)) {
                prob *= p;
                ++ones;
            } else {
                prob *= 1.0 - p;
            }
        }
        pmf[ones] += prob;
    }
    return pmf;
}

// 1. Binomial formulas equal exhaustive enumeration over all 2^n sequences
//    for n <= 12, error <= 1e-12.
CriterionResult criterion_binomial_exactness() {
    Check check;
    double worst = 0.0;
    for (unsigned n = 1; n <= 12; ++n) {
        for (double p : {0.15, 0.3, 0.5, 0.7, 0.9}) {
            const auto success_pmf = enumerate_pmf(n, p);
            const auto intercept_pmf = enumerate_pmf(n, 1.0 - p);
            for (unsigned u = 0; u <= n; ++u) {
                const AttackParams params{p, p, n, u};
                const double e1 = std::abs(dl_success_prob(params) - success_pmf[u]);
                const double e2 = std::abs(hd_attack_prob(params) - intercept_pmf[u]);
                const auto ul = ul_probs(params);
                const double e3 = std::abs(ul.success - success_pmf[u]);
                const double e4 = std::abs(ul.intercept - intercept_pmf[u]);
                worst = std::max({worst, e1, e2, e3, e4});
            }
        }
    }
    check.expect(worst <= 1e-12, "enumeration mismatch " + std::to_string(worst));
    return {check.ok, check.ok ? "max |formula - enumeration| = " + format_number(worst)
                               : check.first_failure,
            {}};
}

// 2. miss_rate_fd >= miss_rate_hd over the full parameter grid.
CriterionResult criterion_hd_advantage_grid() {
    Check check;
    std::uint64_t points = 0;
    for (int pi = 1; pi <= 19; ++pi) {
        for (int qi = 1; qi <= 19; ++qi) {
            const double p_dl = 0.05 * pi;
            const double p_ul = 0.05 * qi;
            for (unsigned n = 2; n <= 10; ++n) {
                for (unsigned u = 0; u <= n; ++u) {
                    const auto out = miss_rates({p_dl, p_ul, n, u});
                    ++points;
                    check.expect(out.miss_rate_fd >= out.miss_rate_hd,
                                 "violation at p_dl=" + std::to_string(p_dl) +
                                     " p_ul=" + std::to_string(p_ul) +
                                     " n=" + std::to_string(n) +
                                     " u=" + std::to_string(u));
                    check.expect(out.hd_advantage ==
                                     (out.miss_rate_fd > out.miss_rate_hd),
                                 "advantage flag inconsistent");
                }
            }
        }
    }
    return {check.ok,
            check.ok ? std::to_string(points) + " grid points, zero violations"
                     : check.first_failure,
            {}};
}

// 3. RRC state-machine simulation matches the closed-form binomial.
CriterionResult criterion_rrc_simulation() {
    Check check;
    const unsigned n = 8;
    const double p_dl = 0.7;
    const std::uint64_t trials = 100000;
    const auto sim = rrc_hd_simulation({p_dl, 0.5, n, 0}, StreamId{424242, 0}, trials);

    check.expect(std::abs(sim.intercept_rate - (1.0 - p_dl)) <=
                     3.0 * sim.standard_error,
                 "interception rate " + format_number(sim.intercept_rate) +
                     " not within 3 SE of 0.3");

    std::vector<double> fingerprint{sim.intercept_rate, sim.standard_error};
    for (unsigned u = 0; u <= n; ++u) {
        const double expected = hd_attack_prob({p_dl, 0.5, n, u});
        const double mean = expected * static_cast<double>(trials);
        const double sigma = std::sqrt(static_cast<double>(trials) * expected *
                                       (1.0 - expected));
        const double observed = static_cast<double>(sim.interception_histogram[u]);
        fingerprint.push_back(observed);
        check.expect(std::abs(observed - mean) <= 3.0 * sigma,
                     "count at u=" + std::to_string(u) + " observed " +
                         format_number(observed) + " expected " + format_number(mean));
    }
    return {check.ok,
            check.ok ? "rate " + format_number(sim.intercept_rate) +
                           " vs 0.3, all 9 histogram bins within 3 sigma"
                     : check.first_failure,
            fingerprint};
}

// 4. Log-normal shadowing linear mean: the Monte-Carlo mean of 10^(X/10)
//    equals exp(mu/Delta + sigma^2/(2 Delta^2)), whose exponent is the
//    1.697 constant at mu = 0 dB, sigma = 8 dB.
CriterionResult criterion_shadowing_mean() {
    Check check;
    auto params = make_propagation_params(2.4e9, 1.0, 2.0, std::nullopt, 1.0,
                                          Decibel{0.0}, Decibel{8.0});
    RandomStream stream(20240807, 0);
    const int n = 1000000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double lin = std::pow(10.0, draw_shadowing(params, stream).phi_db.value / 10.0);
        sum += lin;
        sum_sq += lin * lin;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    const double delta = 10.0 / std::log(10.0);
    const double exponent = 64.0 / (2.0 * delta * delta); // 1.6966...
    const double expected_lin = std::exp(exponent);
    check.expect(std::abs(mean - expected_lin) <= 3.0 * se,
                 "linear mean " + format_number(mean) + " vs " +
                     format_number(expected_lin) + " (3 SE = " +
                     format_number(3.0 * se) + ")");
    check.expect(std::abs(exponent - 1.6966073953530878) < 1e-12,
                 "sigma^2/(2 Delta^2) constant drifted");
    return {check.ok,
            "linear mean " + format_number(mean) + " vs exp(" +
                format_number(exponent) + ") = " + format_number(expected_lin),
            {mean, se}};
}

// 5. Free-space slope exact to 1e-9 dB per doubling; preset ranges enforced.
CriterionResult criterion_free_space_and_presets() {
    Check check;
    auto params = make_propagation_params(28e9, 1.0, 2.0);
    const double slope = 20.0 * std::log10(2.0);
    for (double r = 0.5; r < 1e6; r *= 2.7) {
        const double diff = free_space_path_loss(params, 2.0 * r).value -
                            free_space_path_loss(params, r).value;
        check.expect(std::abs(diff - slope) <= 1e-9,
                     "slope error " + format_number(diff - slope) + " at r = " +
                         format_number(r));
    }
    bool rejected = false;
    try {
        parse_scenario(nlohmann::json::parse(
            R"({"model":"d2d","propagation":{"class":"home","path_loss_exponent":9.9}})"));
    } catch (const ConfigError& e) {
        rejected = std::string(e.what()).find("home") != std::string::npos;
    }
    check.expect(rejected, "out-of-range exponent was not rejected with the preset name");
    return {check.ok, "slope exact to 1e-9 dB; psi=9.9 under class home rejected", {}};
}

// 6. Monte-Carlo secrecy outage agrees with the CDF-reading quadrature.
CriterionResult criterion_sop_cross_validation() {
    Check check;
    std::vector<double> fingerprint;
    SopInputs in;
    in.main_sinr = rayleigh_fading(10.0);
    in.eve_sinr = deterministic_fading(2.0);
    std::string detail;
    for (double cr : {0.5, 1.0, 2.0}) {
        in.target_rate_bps_hz = cr;
        const auto mc = secrecy_outage_probability(in, StreamId{777, 0}, 200000);
        const double quad = secrecy_outage_quadrature(in);
        fingerprint.push_back(mc.probability);
        fingerprint.push_back(quad);
        check.expect(std::abs(mc.probability - quad) <= 3.0 * mc.standard_error,
                     "C_r=" + format_number(cr) + ": mc " +
                         format_number(mc.probability) + " vs quadrature " +
                         format_number(quad));
        detail += (detail.empty() ? "" : ", ") + format_number(mc.probability) + "~" +
                  format_number(quad);
    }
    return {check.ok, check.ok ? detail : check.first_failure, fingerprint};
}

// 7. No random unit-gain-constrained weight vector beats the closed form.
CriterionResult criterion_beamformer_optimality() {
    Check check;
    RandomStream stream(31337, 0);
    BeamScenario scenario;
    for (int i = 0; i < 6; ++i) {
        scenario.channel.push_back(Complex{stream.normal(), stream.normal()});
    }
    scenario.noise_variance = 1.3;
    scenario.transmit_power = 2.5;
    const auto best = optimal_beamformer(scenario);
    check.expect(best.constraint_residual < 1e-9,
                 "constraint residual " + format_number(best.constraint_residual));
    const double expected_snr = scenario.transmit_power * norm_squared(scenario.channel);
    check.expect(std::abs(best.snr - expected_snr) <= 1e-9 * expected_snr,
                 "snr mismatch " + format_number(best.snr));

    const double h_norm_sq = norm_squared(scenario.channel);
    int beaten = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<Complex> z;
        z.reserve(scenario.channel.size());
        for (std::size_t i = 0; i < scenario.channel.size(); ++i) {
            z.push_back(Complex{stream.normal(), stream.normal()});
        }
        const Complex proj = hermitian_dot(scenario.channel, z) / h_norm_sq;
        std::vector<Complex> w = best.weights;
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i] += z[i] - proj * scenario.channel[i];
        }
        if (beamformer_noise_power(scenario, w) < best.noise_power - 1e-12) {
            ++beaten;
        }
        check.expect(std::abs(hermitian_dot(w, scenario.channel) - Complex{1.0, 0.0}) <
                         1e-9,
                     "perturbed vector left the constraint hyperplane");
    }
    check.expect(beaten == 0, std::to_string(beaten) + " vectors beat the optimum");
    return {check.ok,
            "10000 constrained samples, none below the optimal noise power", {}};
}

// 8. UDN geometry: nearest-eavesdropper law, zero-density reduction and
//    monotone leakage in the eavesdropper density.
CriterionResult criterion_udn_geometry() {
    Check check;
    const double density = 5e-4;
    const Window window{400.0, 400.0};
    std::vector<double> distances;
    distances.reserve(100000);
    for (int i = 0; i < 100000; ++i) {
        RandomStream s(555, static_cast<std::uint64_t>(i));
        const auto field = sample_ppp(density, window, s);
        if (auto d = nearest_distance(field)) {
            distances.push_back(*d);
        }
    }
    check.expect(distances.size() >= 99990, "too many empty fields");
    const double stat = ks_statistic(distances, [&](double b) {
        return 1.0 - std::exp(-std::numbers::pi * density * b * b);
    });
    check.expect(stat < ks_critical_1pct(distances.size()),
                 "KS statistic " + format_number(stat) + " above the 1% critical value " +
                     format_number(ks_critical_1pct(distances.size())));

    UdnField field;
    field.bs_density = 2e-5;
    field.user_density = 1e-2;
    field.eve_density = 0.0;
    field.noise_w = 1e-2;
    const auto no_eve = udn_average_secrecy(field, StreamId{600, 0}, 500);
    check.expect(no_eve.eve_rate.mean == 0.0, "leakage nonzero with no eavesdroppers");
    check.expect(no_eve.secrecy_rate == no_eve.main_rate.mean,
                 "secrecy rate must equal the main rate with no eavesdroppers");

    std::vector<double> fingerprint{stat, no_eve.main_rate.mean};
    double prev_mean = -1.0;
    double prev_err = 0.0;
    for (double psi_ev : {2e-5, 1e-4, 3e-4, 6e-4, 1e-3}) {
        field.eve_density = psi_ev;
        const auto est = udn_average_secrecy(field, StreamId{601, 0}, 3000);
        fingerprint.push_back(est.eve_rate.mean);
        check.expect(est.eve_rate.mean >=
                         prev_mean - 3.0 * (est.eve_rate.standard_error + prev_err),
                     "leakage not monotone at density " + format_number(psi_ev));
        prev_mean = est.eve_rate.mean;
        prev_err = est.eve_rate.standard_error;
    }
    return {check.ok,
            check.ok ? "KS " + format_number(stat) + " < " +
                           format_number(ks_critical_1pct(distances.size())) +
                           "; zero-density and monotonicity hold"
                     : check.first_failure,
            fingerprint};
}

// 9. Rain staged on the legitimate link only: secrecy capacity monotone
//    non-increasing in the rain rate and the favorability flag latches.
CriterionResult criterion_weather_monotonicity() {
    Check check;
    const auto params = make_propagation_params(28e9, 1.0, 3.7);
    const auto& table = RainCoefficientTable::builtin();
    const double noise_w = dbm_to_watt(DecibelMilliwatt{-85.0}).value();
    const DecibelMilliwatt pt{43.0};
    const ShadowSample no_shadow{Decibel{0.0}, {}};

    const double rx_user =
        dbm_to_watt(received_power_shadowed(pt, params, 150.0, no_shadow)).value();
    const double rx_eve =
        dbm_to_watt(received_power_shadowed(pt, params, 220.0, no_shadow)).value();
    const auto baseline = make_secrecy_metrics(LinearRatio{rx_user / noise_w},
                                               LinearRatio{rx_eve / noise_w});

    double prev = 1e300;
    bool latched = false;
    std::vector<double> fingerprint;
    for (double rate = 0.0; rate <= 50.0; rate += 5.0) {
        RainCondition cond;
        cond.rate_mm_per_h = rate;
        cond.depths = RainDepths{0.5, 0.5, 0.25, 0.25};
        const auto atten =
            rain_total_attenuation(cond, rain_specific_attenuation(table, 28.0, cond));
        const auto fav = ar_ad_favorability(baseline, atten, 0.35, false);
        fingerprint.push_back(fav.secrecy_capacity);
        check.expect(fav.secrecy_capacity <= prev + 1e-12,
                     "secrecy capacity increased at rate " + format_number(rate));
        if (latched) {
            check.expect(fav.favorable,
                         "favorability flag cleared at rate " + format_number(rate));
        }
        latched = latched || fav.favorable;
        prev = fav.secrecy_capacity;
    }
    check.expect(latched, "favorability never triggered across the sweep");
    return {check.ok, check.ok ? "secrecy capacity non-increasing over 0..50 mm/h, "
                                 "flag latched once set"
                               : check.first_failure,
            fingerprint};
}

// 10. Byte-reproducibility of every stochastic acceptance computation.
CriterionResult criterion_determinism(
    const std::vector<std::pair<std::string, std::function<CriterionResult()>>>&
        stochastic,
    const std::vector<CriterionResult>& first_runs) {
    Check check;
    for (std::size_t i = 0; i < stochastic.size(); ++i) {
        const CriterionResult again = stochastic[i].second();
        const auto& a = first_runs[i].fingerprint;
        const auto& b = again.fingerprint;
        check.expect(a.size() == b.size(),
                     stochastic[i].first + ": fingerprint size changed");
        for (std::size_t k = 0; k < a.size() && k < b.size(); ++k) {
            check.expect(std::memcmp(&a[k], &b[k], sizeof(double)) == 0,
                         stochastic[i].first + ": value " + std::to_string(k) +
                             " not bit-identical");
        }
    }
    // scenario runner: identical seeds give byte-identical CSV output
    const auto doc = nlohmann::json::parse(R"({
        "model": "iot",
        "monte_carlo": {"seed": 99, "trials": 20000},
        "iot": {"mean_snr": 10.0, "interference_fraction": 0.1,
                 "interferers_user": 2, "interferers_eve": 2,
                 "target_rate_bps_hz": 0.5}
    })");
    const auto cfg = parse_scenario(doc);
    const std::string csv_a = run_scenario(cfg).to_csv();
    const std::string csv_b = run_scenario(cfg).to_csv();
    check.expect(csv_a == csv_b, "scenario CSV output differs between runs");
    return {check.ok,
            check.ok ? "all stochastic outputs bit-identical across reruns"
                     : check.first_failure,
            {}};
}

} // namespace

int main() {
    struct Entry {
        int number;
        std::string name;
        std::function<CriterionResult()> run;
        double budget_s;
    };

    const std::vector<Entry> criteria{
        {1, "binomial-exactness", criterion_binomial_exactness, 5.0},
        {2, "hd-advantage-grid", criterion_hd_advantage_grid, 10.0},
        {3, "rrc-simulation-vs-closed-form", criterion_rrc_simulation, 30.0},
        {4, "shadowing-linear-mean", criterion_shadowing_mean, 10.0},
        {5, "free-space-slope-and-presets", criterion_free_space_and_presets, 10.0},
        {6, "sop-cross-validation", criterion_sop_cross_validation, 60.0},
        {7, "beamformer-optimality", criterion_beamformer_optimality, 10.0},
        {8, "udn-geometry", criterion_udn_geometry, 60.0},
        {9, "weather-monotonicity", criterion_weather_monotonicity, 10.0},
    };

    int failures = 0;
    std::vector<std::pair<std::string, std::function<CriterionResult()>>> stochastic;
    std::vector<CriterionResult> stochastic_results;

    for (const auto& entry : criteria) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult result;
        try {
            result = entry.run();
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (elapsed > entry.budget_s) {
            result.pass = false;
            result.detail += " [exceeded " + format_number(entry.budget_s) +
                             " s budget]";
        }
        if (!result.fingerprint.empty()) {
            stochastic.emplace_back(entry.name, entry.run);
            stochastic_results.push_back(result);
        }
        std::printf("[%s] criterion %d %s: %s (%.2f s)\n",
                    result.pass ? "PASS" : "FAIL", entry.number, entry.name.c_str(),
                    result.detail.c_str(), elapsed);
        std::fflush(stdout);
        if (!result.pass) {
            ++failures;
        }
    }

    {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult result;
        try {
            result = criterion_determinism(stochastic, stochastic_results);
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::printf("[%s] criterion 10 determinism: %s (%.2f s)\n",
                    result.pass ? "PASS" : "FAIL", result.detail.c_str(), elapsed);
        if (!result.pass) {
            ++failures;
        }
    }

    std::printf("acceptance: %d/10 criteria passed\n", 10 - failures);
    return failures;
}
