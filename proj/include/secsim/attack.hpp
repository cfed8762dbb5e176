#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "secsim/random.hpp"
#include "secsim/secrecy.hpp"
#include "secsim/units.hpp"

namespace secsim {

/// Per-interval reception probabilities and the interval/success counts the
/// binomial attack formulas run over.
struct AttackParams {
    double p_dl = 0.5;      // legitimate DL reception probability
    double p_ul = 0.5;      // legitimate UL reception probability
    unsigned intervals = 1; // n
    unsigned successes = 0; // u, 0 <= u <= n

    double q_dl() const noexcept { return 1.0 - p_dl; }
    double q_ul() const noexcept { return 1.0 - p_ul; }

    void validate() const {
        if (!(p_dl >= 0.0 && p_dl <= 1.0) || !(p_ul >= 0.0 && p_ul <= 1.0)) {
            throw std::domain_error("attack probabilities must lie in [0, 1]");
        }
        if (intervals < 1) {
            throw std::domain_error("attack interval count must be >= 1");
        }
        if (successes > intervals) {
            throw std::domain_error("success count must not exceed the interval count");
        }
    }
};

/// Exact binomial coefficient; exact in double up to n = 62.
inline double binomial_coefficient(unsigned n, unsigned k) {
    if (k > n) {
        throw std::domain_error("binomial_coefficient requires k <= n");
    }
    if (k > n - k) {
        k = n - k;
    }
    std::uint64_t c = 1;
    for (unsigned i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i; // stays integral at every step
    }
    return static_cast<double>(c);
}

/// Probability of exactly u successful DL receptions at the valid UE in n
/// intervals: C(n,u) p_DL^u q_DL^(n-u).
inline double dl_success_prob(const AttackParams& p) {
    p.validate();
    return binomial_coefficient(p.intervals, p.successes) *
           std::pow(p.p_dl, p.successes) *
           std::pow(p.q_dl(), p.intervals - p.successes);
}

/// Probability of the half-duplex attack (u DL receptions landing at the
/// intruder instead): the role-swapped binomial C(n,u) q_DL^u p_DL^(n-u).
inline double hd_attack_prob(const AttackParams& p) {
    p.validate();
    return binomial_coefficient(p.intervals, p.successes) *
           std::pow(p.q_dl(), p.successes) *
           std::pow(p.p_dl, p.intervals - p.successes);
}

struct UlProbabilities {
    double success = 0.0;   // u successful UL transmissions to the gNB
    double intercept = 0.0; // u UL captures by the intruder
};

/// UL counterparts of the DL binomials, with p_UL in the success role.
inline UlProbabilities ul_probs(const AttackParams& p) {
    p.validate();
    const double coeff = binomial_coefficient(p.intervals, p.successes);
    return UlProbabilities{
        coeff * std::pow(p.p_ul, p.successes) *
            std::pow(p.q_ul(), p.intervals - p.successes),
        coeff * std::pow(p.q_ul(), p.successes) *
            std::pow(p.p_ul, p.intervals - p.successes)};
}

struct TotalProbability {
    double value = 0.0;
    bool exceeds_unity = false; // diagnostic: the additive form can pass 1
};

/// Additive total of the UL and DL success probabilities at the same (n, u);
/// the intersection is taken as zero, so the sum can exceed one for some
/// parameters and is reported as-is with a diagnostic flag.
inline TotalProbability total_prob(const AttackParams& p) {
    const double v = ul_probs(p).success + dl_success_prob(p);
    return TotalProbability{v, v > 1.0};
}

/// Miss rates of the full-duplex and half-duplex attacks, normalized by the
/// total legitimate success probability.
struct AttackOutcome {
    double p_total = 0.0;
    double miss_rate_fd = 0.0;
    double miss_rate_hd = 0.0;
    bool hd_advantage = false;         // miss_rate_fd > miss_rate_hd
    bool rates_in_unit_interval = true; // diagnostic; the comparison holds regardless
};

/// miss_fd = ((1 - P_ULev) + (1 - P_DLev)) / P_total,
/// miss_hd = (1 - P_DLev) / P_total. The FD numerator adds a non-negative
/// term, so the half-duplex attack never misses more often.
inline AttackOutcome miss_rates(const AttackParams& p) {
    const TotalProbability total = total_prob(p);
    if (!(total.value > 0.0)) {
        throw std::domain_error("miss rates undefined: total success probability is zero");
    }
    const double p_dl_ev = hd_attack_prob(p);
    const double p_ul_ev = ul_probs(p).intercept;
    AttackOutcome out;
    out.p_total = total.value;
    out.miss_rate_fd = ((1.0 - p_ul_ev) + (1.0 - p_dl_ev)) / total.value;
    out.miss_rate_hd = (1.0 - p_dl_ev) / total.value;
    out.hd_advantage = out.miss_rate_fd > out.miss_rate_hd;
    out.rates_in_unit_interval =
        out.miss_rate_fd >= 0.0 && out.miss_rate_fd <= 1.0 &&
        out.miss_rate_hd >= 0.0 && out.miss_rate_hd <= 1.0;
    return out;
}

/// RRC setup message skeleton. The artifact fields are opaque byte strings
/// carried through the exchange; nothing is decoded beyond identity matching.
struct RrcMessage {
    std::uint64_t auth_stamp = 0;     // k
    std::string identity;             // e, non-empty
    std::uint32_t indication_bits = 0; // C (proximity / feature-group bits)
    std::vector<std::uint8_t> payload; // x
    std::vector<std::uint8_t> attacker_token;    // a, forged messages only
    std::vector<std::uint8_t> attacker_sequence; // r, forged messages only
    Complex channel_coefficient{1.0, 0.0};
    double power = 1.0;
    double noise = 0.0;

    void validate() const {
        if (identity.empty()) {
            throw std::domain_error("RRC message identity must be non-empty");
        }
    }
};

enum class RrcActor { user_equipment, gnb, intruder };
enum class RrcEvent { setup_request, setup, forged_setup, connection_failure };
enum class RrcOutcome { sent, delivered, intercepted, replayed, idle_return };

inline std::string_view to_string(RrcActor a) {
    switch (a) {
    case RrcActor::user_equipment: return "ue";
    case RrcActor::gnb: return "gnb";
    case RrcActor::intruder: return "intruder";
    }
    return "?";
}

inline std::string_view to_string(RrcEvent e) {
    switch (e) {
    case RrcEvent::setup_request: return "rrc_setup_request";
    case RrcEvent::setup: return "rrc_setup";
    case RrcEvent::forged_setup: return "forged_rrc_setup";
    case RrcEvent::connection_failure: return "connection_failure";
    }
    return "?";
}

inline std::string_view to_string(RrcOutcome o) {
    switch (o) {
    case RrcOutcome::sent: return "sent";
    case RrcOutcome::delivered: return "delivered";
    case RrcOutcome::intercepted: return "intercepted";
    case RrcOutcome::replayed: return "replayed";
    case RrcOutcome::idle_return: return "idle_return";
    }
    return "?";
}

/// One trace line of the RRC simulation.
struct RrcTraceRecord {
    std::uint64_t trial = 0;
    std::uint64_t tti = 0;
    RrcActor actor = RrcActor::user_equipment;
    RrcEvent event = RrcEvent::setup_request;
    RrcOutcome outcome = RrcOutcome::sent;
};

using RrcTraceSink = std::function<void(const RrcTraceRecord&)>;

inline constexpr std::string_view rrc_trace_csv_header = "trial,tti,actor,event,outcome";

inline void write_trace_csv(std::ostream& out, const RrcTraceRecord& rec) {
    out << rec.trial << ',' << rec.tti << ',' << to_string(rec.actor) << ','
        << to_string(rec.event) << ',' << to_string(rec.outcome) << '\n';
}

struct RrcSimulationResult {
    double intercept_rate = 0.0;  // fraction of intervals intercepted
    double standard_error = 0.0;
    std::uint64_t trials = 0;
    unsigned intervals = 0;
    /// interception_histogram[u] counts trials with exactly u intercepted
    /// intervals; expected fractions follow the role-swapped binomial.
    std::vector<std::uint64_t> interception_histogram;
};

namespace detail {

inline std::vector<std::uint8_t> random_bytes(RandomStream& stream, std::size_t n) {
    std::vector<std::uint8_t> bytes(n);
    for (auto& b : bytes) {
        b = static_cast<std::uint8_t>(stream.next_u64() & 0xff);
    }
    return bytes;
}

} // namespace detail

/// Discrete-event half-duplex attack on the RRC setup exchange.
///
/// Per interval the idle UE sends the UL setup request (one TTI); the gNB
/// answers with the DL setup (one TTI). The DL message reaches the UE with
/// probability p_DL; otherwise the intruder captures it, replays a forged
/// setup carrying its opaque token/sequence artifacts, and the connection
/// failure returns everyone to idle, consuming one further TTI before the
/// next attempt. Whether the UE detects the forgery is out of scope; an
/// interception is recorded as soon as the DL capture happens.
///
/// The per-interval interception frequency converges on q_DL and the
/// per-trial interception counts follow the role-swapped binomial.
inline RrcSimulationResult rrc_hd_simulation(const AttackParams& params, StreamId base,
                                             std::uint64_t trials,
                                             const RrcTraceSink& sink = {}) {
    params.validate();
    if (trials < 1) {
        throw std::domain_error("rrc_hd_simulation requires trials >= 1");
    }
    RrcSimulationResult result;
    result.trials = trials;
    result.intervals = params.intervals;
    result.interception_histogram.assign(params.intervals + 1, 0);

    std::uint64_t intercepted_total = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        RandomStream stream(base.seed, base.stream_index + trial);
        std::uint64_t tti = 0;
        unsigned intercepted = 0;
        for (unsigned interval = 0; interval < params.intervals; ++interval) {
            ++tti; // UL: setup request from the idle UE
            RrcMessage request;
            request.auth_stamp = stream.next_u64();
            request.identity = "ue";
            request.indication_bits = static_cast<std::uint32_t>(stream.next_u64());
            request.payload = detail::random_bytes(stream, 4);
            request.validate();
            if (sink) {
                sink({trial, tti, RrcActor::user_equipment, RrcEvent::setup_request,
                      RrcOutcome::sent});
            }

            ++tti; // DL: setup from the gNB
            const bool delivered = stream.uniform() < params.p_dl;
            if (sink) {
                sink({trial, tti, RrcActor::gnb, RrcEvent::setup,
                      delivered ? RrcOutcome::delivered : RrcOutcome::intercepted});
            }
            if (!delivered) {
                ++intercepted;
                RrcMessage forged = request;
                forged.attacker_token = detail::random_bytes(stream, 4);
                forged.attacker_sequence = detail::random_bytes(stream, 4);
                if (sink) {
                    sink({trial, tti, RrcActor::intruder, RrcEvent::forged_setup,
                          RrcOutcome::replayed});
                }
                ++tti; // connection failure consumes one TTI
                if (sink) {
                    sink({trial, tti, RrcActor::user_equipment,
                          RrcEvent::connection_failure, RrcOutcome::idle_return});
                }
            }
        }
        ++result.interception_histogram[intercepted];
        intercepted_total += intercepted;
    }
    const double opportunities =
        static_cast<double>(trials) * static_cast<double>(params.intervals);
    result.intercept_rate = static_cast<double>(intercepted_total) / opportunities;
    result.standard_error = std::sqrt(
        result.intercept_rate * (1.0 - result.intercept_rate) / opportunities);
    return result;
}

struct FavorabilityResult {
    bool favorable = false;        // secrecy capacity below the threshold
    double secrecy_capacity = 0.0; // (C_u - C_ev)^+ after attenuation
    double capacity_user = 0.0;
    double capacity_eve = 0.0;
};

/// Favorable-scenario test for staged weather: folds the attenuation into the
/// received signal power (legitimate link always; eavesdropper link only when
/// requested), recomputes capacities and flags secrecy capacity below C_T.
inline FavorabilityResult ar_ad_favorability(const SecrecyMetrics& baseline,
                                             Decibel weather_db, double c_threshold,
                                             bool applies_to_eve = false) {
    if (!(weather_db.value >= 0.0)) {
        throw std::domain_error("weather attenuation must be non-negative");
    }
    const double atten = std::pow(10.0, -weather_db.value / 10.0);
    const double sinr_user = baseline.sinr_main.value() * atten;
    const double sinr_eve =
        baseline.sinr_eve.value() * (applies_to_eve ? atten : 1.0);
    FavorabilityResult out;
    out.capacity_user = std::log2(1.0 + sinr_user);
    out.capacity_eve = std::log2(1.0 + sinr_eve);
    out.secrecy_capacity = secrecy_rate(out.capacity_user, out.capacity_eve);
    out.favorable = out.secrecy_capacity < c_threshold;
    return out;
}

} // namespace secsim
