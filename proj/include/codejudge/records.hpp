#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "codejudge/common.hpp"
#include "codejudge/complexity.hpp"
#include "codejudge/correctness.hpp"
#include "codejudge/grouprl.hpp"
#include "codejudge/reward.hpp"
#include "codejudge/sandbox.hpp"

namespace codejudge {

// ============================================================
// JSON forms of the record variants. Byte strings travel as base64;
// timestamps appear only in the run manifest / close records.
// ============================================================

inline nlohmann::json to_record_json(const ExecutionResult& r) {
    return {{"status", std::string(run_status_name(r.status))},
            {"stdout_b64", base64_encode(r.stdout_data)},
            {"stderr_b64", base64_encode(r.stderr_data)},
            {"wall_us", r.wall_time.count()},
            {"cpu_us", r.cpu_time.count()},
            {"peak_memory", r.peak_memory},
            {"truncated", r.truncated},
            {"exit_code", r.exit_code}};
}

inline ExecutionResult execution_from_json(const nlohmann::json& j) {
    ExecutionResult r;
    auto status = parse_run_status(j.at("status").get<std::string>());
    if (!status) throw SerializationFailure("bad run status");
    r.status = *status;
    r.stdout_data = base64_decode(j.at("stdout_b64").get<std::string>());
    r.stderr_data = base64_decode(j.at("stderr_b64").get<std::string>());
    r.wall_time = std::chrono::microseconds(j.at("wall_us").get<std::int64_t>());
    r.cpu_time = std::chrono::microseconds(j.at("cpu_us").get<std::int64_t>());
    r.peak_memory = j.at("peak_memory").get<std::int64_t>();
    r.truncated = j.at("truncated").get<bool>();
    r.exit_code = j.at("exit_code").get<int>();
    return r;
}

inline nlohmann::json to_record_json(const PassRate& p) {
    return {{"passed", p.passed_count}, {"total", p.total_count}};
}

inline PassRate passrate_from_json(const nlohmann::json& j) {
    return {j.at("passed").get<int>(), j.at("total").get<int>()};
}

inline nlohmann::json to_record_json(const RewardBreakdown& b) {
    nlohmann::json j = {{"r_format", b.r_format},
                        {"r_correctness", b.r_correctness},
                        {"gate_open", b.gate_open},
                        {"total", b.total}};
    j["r_time"] = b.r_time.has_value() ? nlohmann::json(*b.r_time) : nlohmann::json(nullptr);
    return j;
}

inline RewardBreakdown reward_from_json(const nlohmann::json& j) {
    RewardBreakdown b;
    b.r_format = j.at("r_format").get<double>();
    b.r_correctness = j.at("r_correctness").get<double>();
    b.gate_open = j.at("gate_open").get<bool>();
    b.total = j.at("total").get<double>();
    if (!j.at("r_time").is_null()) b.r_time = j.at("r_time").get<double>();
    return b;
}

inline nlohmann::json to_record_json(const ComplexityVerdict& v) {
    nlohmann::json residuals = nlohmann::json::object();
    for (const auto& [cls, r] : v.residuals)
        residuals[std::string(class_token(cls))] = r;
    nlohmann::json j = {{"estimated", std::string(class_token(v.estimated))},
                        {"residuals", residuals},
                        {"confident", v.confident}};
    if (v.relation)
        j["relation"] = {{"kind", std::string(relation_name(v.relation->kind))},
                         {"steps", v.relation->steps}};
    else
        j["relation"] = nullptr;
    return j;
}

inline ComplexityVerdict verdict_from_json(const nlohmann::json& j) {
    ComplexityVerdict v;
    auto cls = parse_class_token(j.at("estimated").get<std::string>());
    if (!cls) throw SerializationFailure("bad class token");
    v.estimated = *cls;
    for (auto it = j.at("residuals").begin(); it != j.at("residuals").end(); ++it) {
        auto rc = parse_class_token(it.key());
        if (!rc) throw SerializationFailure("bad class token in residuals");
        v.residuals[*rc] = it.value().get<double>();
    }
    v.confident = j.at("confident").get<bool>();
    if (!j.at("relation").is_null()) {
        auto kind = parse_relation_name(j.at("relation").at("kind").get<std::string>());
        if (!kind) throw SerializationFailure("bad relation kind");
        v.relation = Relation{*kind, j.at("relation").at("steps").get<int>()};
    }
    return v;
}

inline nlohmann::json to_record_json(const FilterDecision& d) {
    return {{"problem_id", d.problem_id},
            {"k", d.k},
            {"kept", d.kept},
            {"criterion", std::string(filter_criterion_name(d.criterion))},
            {"band", {d.band.k_min, d.band.k_max}}};
}

inline FilterDecision filter_from_json(const nlohmann::json& j) {
    FilterDecision d;
    d.problem_id = j.at("problem_id").get<std::string>();
    d.k = j.at("k").get<int>();
    d.kept = j.at("kept").get<bool>();
    d.criterion = j.at("criterion").get<std::string>() == "difficulty"
                      ? FilterCriterion::difficulty
                      : FilterCriterion::complexity;
    d.band = {j.at("band").at(0).get<int>(), j.at("band").at(1).get<int>()};
    return d;
}

inline nlohmann::json to_record_json(const AdvantageSet& a) {
    return {{"problem_id", a.problem_id},
            {"advantages", a.advantages},
            {"group_mean", a.group_mean},
            {"group_std", a.group_std}};
}

inline AdvantageSet advantages_from_json(const nlohmann::json& j) {
    AdvantageSet a;
    a.problem_id = j.at("problem_id").get<std::string>();
    a.advantages = j.at("advantages").get<std::vector<double>>();
    a.group_mean = j.at("group_mean").get<double>();
    a.group_std = j.at("group_std").get<double>();
    return a;
}

// ============================================================
// Append-only record store: a header line, then one record per line,
// each with a monotone seq and the run id from the header.
// ============================================================

struct RecordEnvelope {
    std::uint64_t seq = 0;
    std::string type;
    nlohmann::json subject;  // problem_id / rollout_index / role linkage
    nlohmann::json data;
};

struct RunManifest {
    std::string run_id;
    std::string command;
    nlohmann::json config_snapshot;
    std::string engine_version;
    std::string started_at;
    std::string finished_at;
    std::string exit_status;  // success | partial | failed
};

inline std::string make_run_id(const std::string& command, const nlohmann::json& config,
                               std::uint64_t seed) {
    std::uint64_t h = fnv1a64(command);
    h = fnv1a64(config.dump(), h);
    h = fnv1a64(std::to_string(seed), h);
    h = fnv1a64(engine_version(), h);
    return to_hex(h);
}

inline std::string iso_timestamp_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

class RecordStore {
  public:
    static constexpr int format_version = 1;

    RecordStore(const std::filesystem::path& path, const std::string& run_id,
                const std::string& command, const nlohmann::json& config_snapshot)
        : out_(path, std::ios::binary | std::ios::trunc), run_id_(run_id) {
        if (!out_) throw EnvironmentError("cannot open record store: " + path.string());
        nlohmann::json header = {{"format_version", format_version}, {"run_id", run_id}};
        write_line(header);
        nlohmann::json manifest = {{"command", command},
                                   {"config_snapshot", config_snapshot},
                                   {"engine_version", engine_version()},
                                   {"started_at", iso_timestamp_now()}};
        append("run_manifest", nlohmann::json(nullptr), manifest);
    }

    ~RecordStore() {
        if (!closed_) {
            try {
                close("partial");
            } catch (...) {
            }
        }
    }

    std::uint64_t append(const std::string& type, nlohmann::json subject, nlohmann::json data) {
        if (closed_) throw StoreClosed();
        RecordEnvelope env;
        env.seq = ++seq_;
        env.type = type;
        nlohmann::json line = {{"seq", env.seq},
                               {"run_id", run_id_},
                               {"type", type},
                               {"subject", std::move(subject)},
                               {"data", std::move(data)}};
        write_line(line);
        return env.seq;
    }

    std::uint64_t append_execution(const nlohmann::json& subject, const ExecutionResult& r) {
        return append("execution_result", subject, to_record_json(r));
    }
    std::uint64_t append_reward(const nlohmann::json& subject, const RewardBreakdown& b,
                                const PassRate& pass, Stage stage) {
        nlohmann::json data = to_record_json(b);
        data["pass"] = to_record_json(pass);
        data["stage"] = std::string(stage_name(stage));
        return append("reward_breakdown", subject, data);
    }
    std::uint64_t append_filter(const FilterDecision& d) {
        return append("filter_decision", {{"problem_id", d.problem_id}}, to_record_json(d));
    }
    std::uint64_t append_advantages(const AdvantageSet& a) {
        return append("advantage_set", {{"problem_id", a.problem_id}}, to_record_json(a));
    }
    std::uint64_t append_verdict(const nlohmann::json& subject, const ComplexityVerdict& v) {
        return append("complexity_verdict", subject, to_record_json(v));
    }

    void close(const std::string& exit_status) {
        if (closed_) return;
        append("run_close",
               nlohmann::json(nullptr),
               {{"finished_at", iso_timestamp_now()}, {"exit_status", exit_status}});
        closed_ = true;
        out_.flush();
    }

    const std::string& run_id() const { return run_id_; }
    bool closed() const { return closed_; }

  private:
    void write_line(const nlohmann::json& j) {
        std::string line;
        try {
            line = j.dump();
        } catch (const std::exception& e) {
            throw SerializationFailure(e.what());
        }
        out_ << line << '\n';
        if (!out_) throw EnvironmentError("record store write failed");
        out_.flush();
    }

    std::ofstream out_;
    std::string run_id_;
    std::uint64_t seq_ = 0;
    bool closed_ = false;
};

// ============================================================
// Replay
// ============================================================

struct StoreReplay {
    int format_version = 0;
    std::string run_id;
    std::vector<RecordEnvelope> records;
    RunManifest manifest;
};

inline StoreReplay replay_store(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UserError("cannot open record store: " + path.string());
    StoreReplay replay;
    std::string line;
    if (!std::getline(in, line)) throw SerializationFailure("empty record store");
    nlohmann::json header = nlohmann::json::parse(line, nullptr, false);
    if (header.is_discarded() || !header.contains("format_version") ||
        !header.contains("run_id"))
        throw SerializationFailure("bad record store header");
    replay.format_version = header.at("format_version").get<int>();
    replay.run_id = header.at("run_id").get<std::string>();

    std::uint64_t prev_seq = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw SerializationFailure("malformed record line");
        RecordEnvelope env;
        env.seq = j.at("seq").get<std::uint64_t>();
        env.type = j.at("type").get<std::string>();
        env.subject = j.value("subject", nlohmann::json(nullptr));
        env.data = j.at("data");
        if (env.seq <= prev_seq) throw SerializationFailure("record ids not monotone");
        if (j.at("run_id").get<std::string>() != replay.run_id)
            throw SerializationFailure("record run_id does not match header");
        prev_seq = env.seq;
        if (env.type == "run_manifest") {
            replay.manifest.run_id = replay.run_id;
            replay.manifest.command = env.data.value("command", "");
            replay.manifest.config_snapshot = env.data.value("config_snapshot",
                                                             nlohmann::json(nullptr));
            replay.manifest.engine_version = env.data.value("engine_version", "");
            replay.manifest.started_at = env.data.value("started_at", "");
        } else if (env.type == "run_close") {
            replay.manifest.finished_at = env.data.value("finished_at", "");
            replay.manifest.exit_status = env.data.value("exit_status", "");
        }
        replay.records.push_back(std::move(env));
    }
    return replay;
}

}  // namespace codejudge
