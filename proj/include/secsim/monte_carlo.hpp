#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "secsim/random.hpp"

namespace secsim {

/// Result of a Monte-Carlo run: sample mean, its standard error
/// (sample std / sqrt(trials)) and the trial count.
struct McEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::uint64_t trials = 0;
};

/// Streaming sum / sum-of-squares accumulator. Merging accumulators is
/// associative, so trial batches can be combined in any grouping.
class McAccumulator {
public:
    void add(double x) noexcept {
        sum_ += x;
        sum_sq_ += x * x;
        ++count_;
    }

    void combine(const McAccumulator& other) noexcept {
        sum_ += other.sum_;
        sum_sq_ += other.sum_sq_;
        count_ += other.count_;
    }

    std::uint64_t count() const noexcept { return count_; }
    double sum() const noexcept { return sum_; }

    McEstimate estimate() const {
        if (count_ == 0) {
            throw std::domain_error("McAccumulator::estimate requires at least one trial");
        }
        const double n = static_cast<double>(count_);
        const double mean = sum_ / n;
        double se = 0.0;
        if (count_ > 1) {
            double var = (sum_sq_ - sum_ * sum_ / n) / (n - 1.0);
            if (var < 0.0) var = 0.0; // guard against cancellation
            se = std::sqrt(var / n);
        }
        return McEstimate{mean, se, count_};
    }

private:
    double sum_ = 0.0;
    double sum_sq_ = 0.0;
    std::uint64_t count_ = 0;
};

/// Runs `per_trial` once per trial with an independent RandomStream
/// (base.seed, base.stream_index + t). The per-trial function must be pure
/// given its stream; trials could therefore run in any order or in parallel,
/// and the accumulation is associative. Execution here is sequential, which
/// keeps results byte-reproducible for a fixed StreamId.
template <typename Fn>
McEstimate mc_run(Fn&& per_trial, std::uint64_t trials, StreamId base) {
    if (trials < 1) {
        throw std::domain_error("mc_run requires trials >= 1");
    }
    McAccumulator acc;
    for (std::uint64_t t = 0; t < trials; ++t) {
        RandomStream stream(base.seed, base.stream_index + t);
        acc.add(per_trial(stream));
    }
    return acc.estimate();
}

/// Count-weighted merge of two estimates from disjoint stream-index ranges.
inline McEstimate merge(const McEstimate& a, const McEstimate& b) {
    auto to_acc = [](const McEstimate& e) {
        const double n = static_cast<double>(e.trials);
        const double sum = e.mean * n;
        // invert estimate(): sum_sq = var * (n - 1) + sum^2 / n
        const double var = e.standard_error * e.standard_error * n;
        const double sum_sq = var * (n - 1.0) + (e.trials > 0 ? sum * sum / n : 0.0);
        return std::pair<double, double>{sum, sum_sq};
    };
    if (a.trials == 0) return b;
    if (b.trials == 0) return a;
    const auto [sa, qa] = to_acc(a);
    const auto [sb, qb] = to_acc(b);
    const double n = static_cast<double>(a.trials + b.trials);
    const double sum = sa + sb;
    const double sum_sq = qa + qb;
    const double mean = sum / n;
    double se = 0.0;
    if (a.trials + b.trials > 1) {
        double var = (sum_sq - sum * sum / n) / (n - 1.0);
        if (var < 0.0) var = 0.0;
        se = std::sqrt(var / n);
    }
    return McEstimate{mean, se, a.trials + b.trials};
}

} // namespace secsim
