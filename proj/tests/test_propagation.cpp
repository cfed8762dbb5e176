#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "secsim/propagation.hpp"

using namespace secsim;

namespace {

constexpr double kDelta = 4.3429448190325175; // 10 / ln 10

} // namespace

TEST_CASE("free space loss is zero when numerator equals denominator") {
    // distance = lambda / (4 pi) makes the ratio exactly one
    const double f = 1e9;
    auto p = make_propagation_params(f, 1e-6, 2.0);
    const double r = p.wavelength_m / (4.0 * std::numbers::pi);
    CHECK(free_space_path_loss(p, r).value == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("free space slope: doubling the distance adds 20 log10 2") {
    auto p = make_propagation_params(2.4e9, 1.0, 2.0);
    const double slope = 20.0 * std::log10(2.0);
    for (double r = 1.0; r < 1e5; r *= 10.0) {
        const double diff = free_space_path_loss(p, 2.0 * r).value -
                            free_space_path_loss(p, r).value;
        CHECK(diff == Catch::Approx(slope).margin(1e-9));
    }
}

TEST_CASE("free space loss against the 20 log10(4 pi r f / c) oracle") {
    auto p = make_propagation_params(2.4e9, 1.0, 2.0);
    // frozen oracle: 20*log10(4*pi*100*2.4e9 / 299792458)
    CHECK(free_space_path_loss(p, 100.0).value ==
          Catch::Approx(80.0520080561155).margin(1e-9));
    const double oracle =
        20.0 * std::log10(4.0 * std::numbers::pi * 100.0 * p.frequency_hz /
                          speed_of_light_m_s);
    CHECK(free_space_path_loss(p, 100.0).value == Catch::Approx(oracle).margin(1e-9));
    CHECK(free_space_path_gain(p, 100.0).value ==
          Catch::Approx(-oracle).margin(1e-9));
}

TEST_CASE("free space loss rejects non-positive distance") {
    auto p = make_propagation_params(1e9, 1.0, 2.0);
    CHECK_THROWS_AS(free_space_path_loss(p, 0.0), std::domain_error);
    CHECK_THROWS_AS(free_space_path_loss(p, -3.0), std::domain_error);
}

TEST_CASE("log distance received power at the reference distance") {
    auto p = make_propagation_params(2.4e9, 10.0, 3.0, Decibel{-40.0});
    const auto pr = log_distance_received_power(DecibelMilliwatt{20.0}, p, 10.0);
    CHECK(pr.value == Catch::Approx(20.0 - 40.0).margin(1e-12));
}

TEST_CASE("log distance: one decade at exponent two costs 20 dB") {
    auto p = make_propagation_params(2.4e9, 1.0, 2.0, Decibel{0.0});
    const auto at_r0 = log_distance_received_power(DecibelMilliwatt{0.0}, p, 1.0);
    const auto at_10r0 = log_distance_received_power(DecibelMilliwatt{0.0}, p, 10.0);
    CHECK(at_r0.value - at_10r0.value == Catch::Approx(20.0).margin(1e-12));
}

TEST_CASE("urban-macrocell lower bound: two decades at 3.7 cost 74 dB") {
    auto p = make_propagation_params(2.4e9, 1.0, 3.7, Decibel{0.0});
    require_exponent_in_class("urban_macrocell", 3.7); // preset sanity
    const auto near = log_distance_received_power(DecibelMilliwatt{0.0}, p, 1.0);
    const auto far = log_distance_received_power(DecibelMilliwatt{0.0}, p, 100.0);
    CHECK(near.value - far.value == Catch::Approx(74.0).margin(1e-12));
}

TEST_CASE("distances inside the reference distance are rejected") {
    auto p = make_propagation_params(2.4e9, 10.0, 3.0);
    CHECK_THROWS_AS(log_distance_received_power(DecibelMilliwatt{0.0}, p, 9.999),
                    std::domain_error);
}

TEST_CASE("received power strictly decreases with distance") {
    auto p = make_propagation_params(28e9, 1.0, 3.0);
    const ShadowSample none{Decibel{0.0}, {}};
    double prev = 1e9;
    for (double r = 1.0; r <= 1e4; r *= 1.7) {
        const double v = received_power_shadowed(DecibelMilliwatt{30.0}, p, r, none).value;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("reference attenuation constant consistency") {
    for (double f : {0.9e9, 2.4e9, 28e9, 60e9}) {
        for (double r0 : {0.5, 1.0, 10.0}) {
            const double lambda = speed_of_light_m_s / f;
            CHECK(reference_attenuation_db(lambda, r0).value ==
                  Catch::Approx(20.0 * std::log10(lambda / r0)).margin(1e-12));
        }
    }
}

TEST_CASE("free-space-calibrated q reproduces free space at psi = 2") {
    const double f = 5.8e9;
    const double lambda = speed_of_light_m_s / f;
    const double r0 = 1.0;
    auto p = make_propagation_params(f, r0, 2.0,
                                     free_space_reference_attenuation_db(lambda, r0));
    for (double r = 1.0; r <= 1e4; r *= 3.0) {
        const double via_log_distance =
            log_distance_received_power(DecibelMilliwatt{0.0}, p, r).value;
        const double via_free_space = -free_space_path_loss(p, r).value;
        CHECK(via_log_distance == Catch::Approx(via_free_space).margin(1e-9));
    }
}

TEST_CASE("zero shadowing spread is deterministic") {
    auto p = make_propagation_params(2.4e9, 1.0, 2.0, std::nullopt, 1.0,
                                     Decibel{-2.5}, Decibel{0.0});
    for (int i = 0; i < 5; ++i) {
        RandomStream s(100, static_cast<std::uint64_t>(i));
        CHECK(draw_shadowing(p, s).phi_db.value == -2.5);
    }
}

TEST_CASE("shadowing linear mean matches exp(mu/Delta + sigma^2/(2 Delta^2))") {
    auto p = make_propagation_params(2.4e9, 1.0, 2.0, std::nullopt, 1.0,
                                     Decibel{0.0}, Decibel{8.0});
    RandomStream s(2024, 0);
    const int n = 1000000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double lin = std::pow(10.0, draw_shadowing(p, s).phi_db.value / 10.0);
        sum += lin;
        sum_sq += lin * lin;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    const double exponent = 64.0 / (2.0 * kDelta * kDelta); // 1.6966...
    CHECK(exponent == Catch::Approx(1.6966073953530878).margin(1e-12));
    // lognormal mean: E[10^(X/10)] = exp(mu/Delta + sigma^2/(2 Delta^2))
    CHECK(std::abs(mean - std::exp(exponent)) <= 3.0 * se);
    // equivalently, back in the dB domain the mean gains sigma^2/(2 Delta)
    CHECK(10.0 * std::log10(mean) ==
          Catch::Approx(64.0 / (2.0 * kDelta)).margin(3.0 * kDelta * se));
}

TEST_CASE("shadowing sample standard deviation approaches sigma") {
    auto p = make_propagation_params(2.4e9, 1.0, 2.0, std::nullopt, 1.0,
                                     Decibel{0.0}, Decibel{8.0});
    RandomStream s(77, 0);
    const int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = draw_shadowing(p, s).phi_db.value;
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sum_sq / n - mean * mean);
    CHECK(sd == Catch::Approx(8.0).margin(0.1));
}

TEST_CASE("shadowed power composes additively in dB") {
    auto p = make_propagation_params(28e9, 1.0, 3.0);
    const auto clear = received_power_shadowed(DecibelMilliwatt{30.0}, p, 200.0,
                                               ShadowSample{Decibel{0.0}, {}});
    const auto shadowed = received_power_shadowed(DecibelMilliwatt{30.0}, p, 200.0,
                                                  ShadowSample{Decibel{5.0}, {}});
    CHECK(clear.value ==
          Catch::Approx(log_distance_received_power(DecibelMilliwatt{30.0}, p, 200.0)
                            .value));
    CHECK(clear.value - shadowed.value == Catch::Approx(5.0).margin(1e-12));
}

TEST_CASE("full chain at 28 GHz matches a step-by-step recompute") {
    // oracle applies the reference constant, the distance law and the
    // shadowing subtraction one step at a time
    const double f = 28e9;
    const double lambda = speed_of_light_m_s / f;
    const double r0 = 1.0;
    const double psi = 3.0;
    auto p = make_propagation_params(f, r0, psi);
    const double q = 20.0 * std::log10(lambda / r0);
    const double oracle = 30.0 + q - 10.0 * psi * std::log10(200.0 / r0) - 4.0;
    const auto chained = received_power_shadowed(DecibelMilliwatt{30.0}, p, 200.0,
                                                 ShadowSample{Decibel{4.0}, {}});
    CHECK(chained.value == Catch::Approx(oracle).margin(1e-12));
    CHECK(chained.value == Catch::Approx(-82.43764643820526).margin(1e-9)); // frozen
}

TEST_CASE("preset table lookups and range checks") {
    REQUIRE(find_path_loss_preset("home") != nullptr);
    CHECK(find_path_loss_preset("home")->psi_min == 3.0);
    CHECK(find_path_loss_preset("home")->psi_max == 3.0);
    CHECK(find_path_loss_preset("does_not_exist") == nullptr);

    CHECK_NOTHROW(require_exponent_in_class("home", 3.0));
    CHECK_THROWS_AS(require_exponent_in_class("home", 9.9), std::out_of_range);
    CHECK_THROWS_AS(require_exponent_in_class("store", 2.3), std::out_of_range);
    CHECK_THROWS_AS(require_exponent_in_class("nowhere", 2.0), std::out_of_range);

    try {
        require_exponent_in_class("home", 9.9);
        FAIL("expected out_of_range");
    } catch (const std::out_of_range& e) {
        const std::string msg = e.what();
        CHECK(msg.find("home") != std::string::npos);
        CHECK(msg.find("9.9") != std::string::npos);
    }
}

TEST_CASE("preset export produces the documented csv") {
    std::ostringstream out;
    export_path_loss_presets_csv(out);
    const std::string csv = out.str();
    CHECK(csv.rfind("scenario,psi_min,psi_max\n", 0) == 0);
    CHECK(csv.find("urban_macrocell,3.7,6.5") != std::string::npos);
    CHECK(csv.find("home,3,3") != std::string::npos);
    CHECK(csv.find("factory,1.6,3.3") != std::string::npos);
}

TEST_CASE("params validation") {
    CHECK_THROWS_AS(make_propagation_params(0.0, 1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(make_propagation_params(1e9, 0.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(make_propagation_params(1e9, 1.0, 0.0), std::domain_error);
    PropagationParams p = make_propagation_params(1e9, 1.0, 2.0);
    p.wavelength_m *= 1.001; // break the lambda = c/f invariant
    CHECK_THROWS_AS(p.validate(), std::domain_error);
}
