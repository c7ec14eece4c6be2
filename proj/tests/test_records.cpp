#include <doctest.h>

#include <fstream>

#include "codejudge/records.hpp"
#include "test_support.hpp"

using namespace codejudge;

TEST_SUITE("records") {

TEST_CASE("execution results round-trip, binary-safe") {
    ExecutionResult r;
    r.status = RunStatus::runtime_error;
    r.stdout_data = std::string("bin\0ary\xff", 8);
    r.stderr_data = "trace";
    r.wall_time = std::chrono::microseconds(12345);
    r.cpu_time = std::chrono::microseconds(11111);
    r.peak_memory = 1 << 20;
    r.truncated = true;
    r.exit_code = 9;
    nlohmann::json j = to_record_json(r);
    CHECK(j.at("stdout_b64") == base64_encode(r.stdout_data));
    ExecutionResult back = execution_from_json(j);
    CHECK(back.status == r.status);
    CHECK(back.stdout_data == r.stdout_data);
    CHECK(back.wall_time == r.wall_time);
    CHECK(back.exit_code == 9);
    CHECK(back.truncated);
}

TEST_CASE("reward breakdown keeps the optional time term") {
    RewardBreakdown b;
    b.r_format = 0.1;
    b.r_correctness = 1.0;
    b.r_time = 0.25;
    b.gate_open = true;
    b.total = 1.35;
    RewardBreakdown back = reward_from_json(to_record_json(b));
    REQUIRE(back.r_time.has_value());
    CHECK(*back.r_time == doctest::Approx(0.25));
    CHECK(back.gate_open);

    b.r_time.reset();
    b.gate_open = false;
    nlohmann::json closed = to_record_json(b);
    CHECK(closed.at("r_time").is_null());
    CHECK_FALSE(reward_from_json(closed).r_time.has_value());
}

TEST_CASE("complexity verdicts serialize class tokens and relation") {
    ComplexityVerdict v;
    v.estimated = ComplexityClass::CNLOGN;
    v.residuals[ComplexityClass::CN] = 0.31;
    v.residuals[ComplexityClass::CNLOGN] = 0.05;
    v.confident = true;
    v.relation = Relation{Relation::Kind::worse, 2};
    nlohmann::json j = to_record_json(v);
    CHECK(j.at("estimated") == "O(n log n)");
    CHECK(j.at("residuals").contains("O(n)"));
    ComplexityVerdict back = verdict_from_json(j);
    CHECK(back.estimated == v.estimated);
    CHECK(back.residuals.at(ComplexityClass::CN) == doctest::Approx(0.31));
    REQUIRE(back.relation.has_value());
    CHECK(back.relation->kind == Relation::Kind::worse);
    CHECK(back.relation->steps == 2);

    j["estimated"] = "O(2^n)";
    CHECK_THROWS_AS(verdict_from_json(j), SerializationFailure);
}

TEST_CASE("filter decisions and advantage sets round-trip") {
    FilterDecision d{"prob", 3, true, FilterCriterion::complexity, FilterBand{2, 6}};
    FilterDecision dback = filter_from_json(to_record_json(d));
    CHECK(dback.problem_id == "prob");
    CHECK(dback.k == 3);
    CHECK(dback.kept);
    CHECK(dback.criterion == FilterCriterion::complexity);
    CHECK(dback.band.k_min == 2);
    CHECK(dback.band.k_max == 6);

    AdvantageSet a{"prob", {1.0, -1.0}, 0.5, 0.5};
    AdvantageSet aback = advantages_from_json(to_record_json(a));
    CHECK(aback.advantages == a.advantages);
    CHECK(aback.group_std == doctest::Approx(0.5));
}

TEST_CASE("run ids derive from command, config, seed and engine version") {
    nlohmann::json cfg = {{"x", 1}};
    CHECK(make_run_id("score", cfg, 1) == make_run_id("score", cfg, 1));
    CHECK(make_run_id("score", cfg, 1) != make_run_id("score", cfg, 2));
    CHECK(make_run_id("score", cfg, 1) != make_run_id("filter", cfg, 1));
    CHECK(make_run_id("score", nlohmann::json{{"x", 2}}, 1) != make_run_id("score", cfg, 1));
    CHECK(make_run_id("score", cfg, 1).size() == 16);  // fnv1a64 hex
}

TEST_CASE("store writes manifest first and replays records in order") {
    detail::TempDir dir;
    auto path = dir.path() / "records.jsonl";
    nlohmann::json snapshot = {{"seed", 7}};
    std::string run_id = make_run_id("score", snapshot, 7);
    {
        RecordStore store(path, run_id, "score", snapshot);
        store.append_reward({{"problem_id", "p"}, {"rollout_index", 0}}, RewardBreakdown{},
                            PassRate{2, 4}, Stage::stage1);
        FilterDecision d{"p", 2, true, FilterCriterion::difficulty, FilterBand{}};
        store.append_filter(d);
        store.close("success");
    }

    StoreReplay replay = replay_store(path);
    CHECK(replay.run_id == run_id);
    CHECK(replay.manifest.command == "score");
    CHECK(replay.manifest.exit_status == "success");
    CHECK_FALSE(replay.manifest.started_at.empty());
    CHECK_FALSE(replay.manifest.finished_at.empty());
    REQUIRE(replay.records.size() == 4);  // manifest, reward, filter, close
    CHECK(replay.records.front().type == "run_manifest");
    CHECK(replay.records.back().type == "run_close");
    CHECK(replay.records[1].type == "reward_breakdown");
    CHECK(replay.records[1].subject.at("problem_id") == "p");
    CHECK(replay.records[1].data.at("pass").at("passed") == 2);
    for (std::size_t i = 0; i < replay.records.size(); ++i)
        CHECK(replay.records[i].seq == i + 1);

    // timestamps live only in manifest and close
    for (const auto& rec : replay.records) {
        if (rec.type == "run_manifest" || rec.type == "run_close") continue;
        CHECK_FALSE(rec.data.contains("started_at"));
        CHECK_FALSE(rec.data.contains("finished_at"));
    }
}

TEST_CASE("a store abandoned mid-run closes itself as partial") {
    detail::TempDir dir;
    auto path = dir.path() / "records.jsonl";
    {
        RecordStore store(path, "deadbeef00000000", "exec", nlohmann::json::object());
        store.append("execution_result", {{"problem_id", "p"}}, {{"exit_code", 0}});
    }
    StoreReplay replay = replay_store(path);
    CHECK(replay.manifest.exit_status == "partial");
}

TEST_CASE("writing after close is refused") {
    detail::TempDir dir;
    RecordStore store(dir.path() / "r.jsonl", "deadbeef00000000", "exec",
                      nlohmann::json::object());
    store.close("success");
    CHECK_THROWS_AS(store.append("execution_result", {}, {}), StoreClosed);
}

TEST_CASE("replay rejects tampered sequence numbers and foreign run ids") {
    detail::TempDir dir;
    auto path = dir.path() / "records.jsonl";
    {
        RecordStore store(path, "00000000deadbeef", "exec", nlohmann::json::object());
        store.append("execution_result", {}, {{"exit_code", 0}});
        store.close("success");
    }
    std::string body = testsup::slurp(path);

    {
        std::string broken = body;
        auto pos = broken.find("\"seq\":2");
        REQUIRE(pos != std::string::npos);
        broken.replace(pos, 7, "\"seq\":9");
        testsup::spit(path, broken);
        CHECK_THROWS_AS(replay_store(path), SerializationFailure);
    }
    {
        std::string foreign = body;
        auto pos = foreign.rfind("00000000deadbeef");
        foreign.replace(pos, 16, "ffffffffffffffff");
        testsup::spit(path, foreign);
        CHECK_THROWS_AS(replay_store(path), SerializationFailure);
    }
}

}  // TEST_SUITE
