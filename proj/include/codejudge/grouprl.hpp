#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "codejudge/common.hpp"

namespace codejudge {

// ============================================================
// GRPO advantages
// ============================================================

struct RolloutGroup {
    std::string problem_id;
    std::vector<double> rewards;
    std::vector<bool> success_flags;
};

struct AdvantageSet {
    std::string problem_id;
    std::vector<double> advantages;
    double group_mean = 0.0;
    double group_std = 0.0;  // population standard deviation
};

inline AdvantageSet compute_advantages(const RolloutGroup& group, double epsilon = 1e-8) {
    std::size_t n = group.rewards.size();
    if (n < 2) throw GroupTooSmall(n);

    AdvantageSet out;
    out.problem_id = group.problem_id;
    double mean = std::accumulate(group.rewards.begin(), group.rewards.end(), 0.0) /
                  static_cast<double>(n);
    double var = 0.0;
    for (double r : group.rewards) var += (r - mean) * (r - mean);
    var /= static_cast<double>(n);
    double std_dev = std::sqrt(var);

    out.group_mean = mean;
    out.group_std = std_dev;
    out.advantages.resize(n, 0.0);
    if (std_dev > epsilon)
        for (std::size_t i = 0; i < n; ++i)
            out.advantages[i] = (group.rewards[i] - mean) / std_dev;
    return out;
}

// ============================================================
// Stage-1 / Stage-2 on-policy filtering: keep k in [k_min, k_max]
// ============================================================

enum class FilterCriterion { difficulty, complexity };

inline std::string_view filter_criterion_name(FilterCriterion c) {
    return c == FilterCriterion::difficulty ? "difficulty" : "complexity";
}

struct FilterBand {
    int k_min = 1;
    int k_max = 5;
};

struct FilterDecision {
    std::string problem_id;
    int k = 0;
    bool kept = false;
    FilterCriterion criterion = FilterCriterion::difficulty;
    FilterBand band;
};

namespace detail {

inline FilterDecision band_filter(const RolloutGroup& group, FilterBand band,
                                  FilterCriterion criterion) {
    int n = static_cast<int>(group.success_flags.size());
    if (band.k_min < 0 || band.k_min > band.k_max || band.k_max > n)
        throw UserError("filter band [" + std::to_string(band.k_min) + ", " +
                        std::to_string(band.k_max) + "] not within [0, " + std::to_string(n) +
                        "]");
    FilterDecision d;
    d.problem_id = group.problem_id;
    d.criterion = criterion;
    d.band = band;
    d.k = static_cast<int>(
        std::count(group.success_flags.begin(), group.success_flags.end(), true));
    d.kept = band.k_min <= d.k && d.k <= band.k_max;
    return d;
}

}  // namespace detail

// success_flags are PassRate = 1 indicators
inline FilterDecision stage1_filter(const RolloutGroup& group, FilterBand band = {}) {
    return detail::band_filter(group, band, FilterCriterion::difficulty);
}

// success_flags indicate fully-correct AND complexity-satisfying rollouts
inline FilterDecision stage2_filter(const RolloutGroup& group, FilterBand band = {}) {
    return detail::band_filter(group, band, FilterCriterion::complexity);
}

// ============================================================
// Data-mixture apportionment (largest remainder)
// ============================================================
// Proportions are normalized first; shares need not sum to 100.

inline std::vector<std::pair<std::string, std::int64_t>> sample_mixture(
    const std::vector<std::pair<std::string, double>>& domains, std::int64_t total,
    std::uint64_t seed) {
    if (domains.empty()) throw EmptyDomainList();
    if (total < 1) throw UserError("sample_mixture: total must be >= 1");
    double weight_sum = 0.0;
    for (const auto& [name, w] : domains) {
        if (!(w > 0.0)) throw UserError("sample_mixture: proportion for '" + name +
                                        "' must be positive");
        weight_sum += w;
    }

    std::size_t n = domains.size();
    std::vector<std::int64_t> counts(n);
    std::vector<double> remainders(n);
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double quota = static_cast<double>(total) * domains[i].second / weight_sum;
        counts[i] = static_cast<std::int64_t>(std::floor(quota));
        remainders[i] = quota - std::floor(quota);
        assigned += counts[i];
    }

    // leftover seats go to the largest remainders; the seed breaks exact
    // remainder ties reproducibly
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> priority(n);
    std::iota(priority.begin(), priority.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(priority.begin(), priority.end(), rng);
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[priority[i]] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (remainders[a] != remainders[b]) return remainders[a] > remainders[b];
        return rank[a] < rank[b];
    });
    std::int64_t leftover = total - assigned;
    for (std::int64_t s = 0; s < leftover; ++s)
        ++counts[order[static_cast<std::size_t>(s) % n]];

    std::vector<std::pair<std::string, std::int64_t>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(domains[i].first, counts[i]);
    return out;
}

}  // namespace codejudge
