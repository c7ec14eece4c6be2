#pragma once

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "codejudge/complexity.hpp"
#include "codejudge/correctness.hpp"
#include "codejudge/grouprl.hpp"
#include "codejudge/records.hpp"
#include "codejudge/reward.hpp"

namespace codejudge {

struct ReportRow {
    std::string problem_id;
    int rollout_index = 0;
    PassRate pass;
    RewardBreakdown reward;
    std::optional<ComplexityVerdict> verdict;
    std::optional<FilterDecision> filter;
    int truncated_runs = 0;
    int timed_out_runs = 0;
};

struct ReportAggregates {
    double mean_reward = 0.0;
    double gate_open_fraction = 0.0;
    std::map<ComplexityClass, int> class_histogram;
    int truncation_count = 0;
    int timeout_count = 0;
    int row_count = 0;
};

struct Report {
    std::vector<ReportRow> rows;
    ReportAggregates aggregates;
};

// Aggregates are a pure function of rows so reports can always be re-derived.
inline ReportAggregates compute_aggregates(const std::vector<ReportRow>& rows) {
    ReportAggregates agg;
    agg.row_count = static_cast<int>(rows.size());
    if (rows.empty()) return agg;
    double total = 0.0;
    int open = 0;
    for (const auto& row : rows) {
        total += row.reward.total;
        if (row.reward.gate_open) ++open;
        if (row.verdict) ++agg.class_histogram[row.verdict->estimated];
        agg.truncation_count += row.truncated_runs;
        agg.timeout_count += row.timed_out_runs;
    }
    agg.mean_reward = total / static_cast<double>(rows.size());
    agg.gate_open_fraction = static_cast<double>(open) / static_cast<double>(rows.size());
    return agg;
}

inline Report make_report(std::vector<ReportRow> rows) {
    Report report;
    report.aggregates = compute_aggregates(rows);
    report.rows = std::move(rows);
    return report;
}

inline nlohmann::json to_json(const Report& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json j = {{"problem_id", row.problem_id},
                            {"rollout_index", row.rollout_index},
                            {"pass", to_record_json(row.pass)},
                            {"reward", to_record_json(row.reward)},
                            {"truncated_runs", row.truncated_runs},
                            {"timed_out_runs", row.timed_out_runs}};
        j["verdict"] = row.verdict ? to_record_json(*row.verdict) : nlohmann::json(nullptr);
        j["filter"] = row.filter ? to_record_json(*row.filter) : nlohmann::json(nullptr);
        rows.push_back(std::move(j));
    }
    nlohmann::json histogram = nlohmann::json::object();
    for (const auto& [cls, count] : report.aggregates.class_histogram)
        histogram[std::string(class_token(cls))] = count;
    return {{"rows", rows},
            {"aggregates",
             {{"mean_reward", report.aggregates.mean_reward},
              {"gate_open_fraction", report.aggregates.gate_open_fraction},
              {"class_histogram", histogram},
              {"truncation_count", report.aggregates.truncation_count},
              {"timeout_count", report.aggregates.timeout_count},
              {"row_count", report.aggregates.row_count}}}};
}

inline std::string format_table(const Report& report) {
    std::ostringstream out;
    out << std::left << std::setw(24) << "problem" << std::setw(6) << "idx" << std::setw(8)
        << "pass" << std::setw(10) << "reward" << std::setw(6) << "gate" << std::setw(12)
        << "class" << "\n";
    out << std::string(66, '-') << "\n";
    for (const auto& row : report.rows) {
        std::ostringstream pass;
        pass << row.pass.passed_count << "/" << row.pass.total_count;
        out << std::left << std::setw(24) << row.problem_id << std::setw(6)
            << row.rollout_index << std::setw(8) << pass.str() << std::setw(10) << std::fixed
            << std::setprecision(4) << row.reward.total << std::setw(6)
            << (row.reward.gate_open ? "open" : "-") << std::setw(12)
            << (row.verdict ? std::string(class_token(row.verdict->estimated)) : "-") << "\n";
    }
    out << std::string(66, '-') << "\n";
    out << "rows: " << report.aggregates.row_count << "  mean reward: " << std::fixed
        << std::setprecision(4) << report.aggregates.mean_reward
        << "  gate open: " << std::setprecision(4) << report.aggregates.gate_open_fraction
        << "  truncations: " << report.aggregates.truncation_count
        << "  timeouts: " << report.aggregates.timeout_count << "\n";
    return out.str();
}

}  // namespace codejudge
