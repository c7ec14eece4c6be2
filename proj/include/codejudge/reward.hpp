#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "codejudge/bundle.hpp"
#include "codejudge/common.hpp"
#include "codejudge/complexity.hpp"
#include "codejudge/correctness.hpp"

namespace codejudge {

// ============================================================
// Gated reward: R = R_format + R_correctness, plus R_time only
// when the stage-2 gate (PassRate exactly 1) is open.
// ============================================================

enum class Stage { stage1, stage2 };

inline std::string_view stage_name(Stage s) {
    return s == Stage::stage1 ? "stage1" : "stage2";
}

inline std::optional<Stage> parse_stage(std::string_view name) {
    if (name == "stage1") return Stage::stage1;
    if (name == "stage2") return Stage::stage2;
    return std::nullopt;
}

struct RewardConfig {
    double w_f = 0.1;             // format weight
    double w_t = 0.5;             // time-reward ceiling
    double per_step_decay = 0.5;  // time-reward decay per lattice step worse
};

struct RewardBreakdown {
    double r_format = 0.0;
    double r_correctness = 0.0;
    std::optional<double> r_time;  // present only when the gate is open
    bool gate_open = false;
    double total = 0.0;
};

inline double format_reward(const Rollout& rollout, std::optional<bool> compile_ok,
                            const RewardConfig& config) {
    bool extracted = rollout.extracted_program.has_value();
    bool compiled = !compile_ok.has_value() || *compile_ok;
    return extracted && compiled ? config.w_f : 0.0;
}

inline double time_reward(const ComplexityVerdict& verdict, const RewardConfig& config) {
    if (!verdict.relation.has_value())
        throw UserError("time_reward: verdict lacks relation_to_reference");
    const Relation& rel = *verdict.relation;
    if (rel.kind == Relation::Kind::worse)
        return config.w_t * std::max(0.0, 1.0 - config.per_step_decay * rel.steps);
    return config.w_t;
}

inline RewardBreakdown compose_reward(const Rollout& rollout, const PassRate& pass,
                                      const std::optional<ComplexityVerdict>& verdict,
                                      const RewardConfig& config, Stage stage,
                                      std::optional<bool> compile_ok = std::nullopt) {
    RewardBreakdown out;
    out.r_format = format_reward(rollout, compile_ok, config);
    out.r_correctness = pass.value();
    out.gate_open = stage == Stage::stage2 && pass.full();
    if (out.gate_open) {
        if (!verdict.has_value()) throw MissingVerdict();
        out.r_time = time_reward(*verdict, config);
    }
    out.total = out.r_format + out.r_correctness + out.r_time.value_or(0.0);
    return out;
}

// ============================================================
// SFT candidate selection: fully correct, best complexity class
// ============================================================

struct ScoredCandidate {
    SourceProgram program;
    PassRate pass;
    ComplexityVerdict verdict;
};

inline std::vector<SourceProgram> select_time_optimal(
    const std::vector<ScoredCandidate>& candidates) {
    if (candidates.empty()) throw UserError("select_time_optimal: empty candidate list");
    std::optional<ComplexityClass> best;
    for (const auto& c : candidates)
        if (c.pass.full() && (!best || class_rank(c.verdict.estimated) < class_rank(*best)))
            best = c.verdict.estimated;
    std::vector<SourceProgram> out;
    if (!best) return out;
    for (const auto& c : candidates)
        if (c.pass.full() && c.verdict.estimated == *best) out.push_back(c.program);
    return out;
}

}  // namespace codejudge
