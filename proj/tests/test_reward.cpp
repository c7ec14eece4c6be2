#include <doctest.h>

#include "codejudge/reward.hpp"

using namespace codejudge;

namespace {

Rollout with_program() {
    Rollout r;
    r.problem_id = "p";
    r.raw_response = "```python\nprint(1)\n```";
    r.extracted_program = SourceProgram{"python3", "print(1)\n"};
    return r;
}

Rollout without_program() {
    Rollout r;
    r.problem_id = "p";
    r.raw_response = "I would sort the array.";
    return r;
}

ComplexityVerdict verdict_with(Relation::Kind kind, int steps) {
    ComplexityVerdict v;
    v.estimated = ComplexityClass::CN;
    v.relation = Relation{kind, steps};
    return v;
}

}  // namespace

TEST_SUITE("reward") {

TEST_CASE("format reward needs an extracted, compiling program") {
    RewardConfig cfg;
    CHECK(format_reward(with_program(), std::nullopt, cfg) == doctest::Approx(0.1));
    CHECK(format_reward(with_program(), true, cfg) == doctest::Approx(0.1));
    CHECK(format_reward(with_program(), false, cfg) == 0.0);
    CHECK(format_reward(without_program(), std::nullopt, cfg) == 0.0);
}

TEST_CASE("time reward decays per lattice step and floors at zero") {
    RewardConfig cfg;  // w_t = 0.5, decay = 0.5
    CHECK(time_reward(verdict_with(Relation::Kind::equal, 0), cfg) == doctest::Approx(0.5));
    CHECK(time_reward(verdict_with(Relation::Kind::better, 1), cfg) == doctest::Approx(0.5));
    CHECK(time_reward(verdict_with(Relation::Kind::worse, 1), cfg) == doctest::Approx(0.25));
    CHECK(time_reward(verdict_with(Relation::Kind::worse, 2), cfg) == 0.0);
    CHECK(time_reward(verdict_with(Relation::Kind::worse, 5), cfg) == 0.0);
    ComplexityVerdict bare;
    CHECK_THROWS_AS(time_reward(bare, cfg), UserError);
}

TEST_CASE("stage1 never opens the gate") {
    RewardConfig cfg;
    PassRate full{6, 6};
    RewardBreakdown b = compose_reward(with_program(), full, std::nullopt, cfg, Stage::stage1);
    CHECK_FALSE(b.gate_open);
    CHECK_FALSE(b.r_time.has_value());
    CHECK(b.total == doctest::Approx(1.1));  // 0.1 format + 1.0 correctness
}

TEST_CASE("stage2 gate opens only on a perfect pass rate") {
    RewardConfig cfg;
    auto v = verdict_with(Relation::Kind::equal, 0);

    RewardBreakdown full =
        compose_reward(with_program(), PassRate{6, 6}, v, cfg, Stage::stage2);
    CHECK(full.gate_open);
    REQUIRE(full.r_time.has_value());
    CHECK(full.total == doctest::Approx(1.6));

    RewardBreakdown partial =
        compose_reward(with_program(), PassRate{5, 6}, v, cfg, Stage::stage2);
    CHECK_FALSE(partial.gate_open);
    CHECK_FALSE(partial.r_time.has_value());
    CHECK(partial.total == doctest::Approx(0.1 + 5.0 / 6.0));
}

TEST_CASE("open gate without a verdict is an error") {
    RewardConfig cfg;
    CHECK_THROWS_AS(
        compose_reward(with_program(), PassRate{4, 4}, std::nullopt, cfg, Stage::stage2),
        MissingVerdict);
    // closed gate: missing verdict is fine
    CHECK_NOTHROW(
        compose_reward(with_program(), PassRate{3, 4}, std::nullopt, cfg, Stage::stage2));
}

TEST_CASE("gate law holds for every pass count") {
    RewardConfig cfg;
    auto v = verdict_with(Relation::Kind::worse, 1);
    for (int k = 0; k <= 50; ++k) {
        for (Stage stage : {Stage::stage1, Stage::stage2}) {
            RewardBreakdown b =
                compose_reward(with_program(), PassRate{k, 50}, v, cfg, stage);
            bool expect_gate = stage == Stage::stage2 && k == 50;
            CHECK(b.gate_open == expect_gate);
            CHECK(b.r_time.has_value() == expect_gate);
            double base = 0.1 + static_cast<double>(k) / 50.0;
            CHECK(b.total == doctest::Approx(expect_gate ? base + 0.25 : base));
        }
    }
}

TEST_CASE("select_time_optimal keeps all fully-correct programs of the best class") {
    auto make = [](const std::string& src, int passed, int total, ComplexityClass cls) {
        ScoredCandidate c;
        c.program = SourceProgram{"python3", src};
        c.pass = PassRate{passed, total};
        c.verdict.estimated = cls;
        return c;
    };
    std::vector<ScoredCandidate> cands = {
        make("slow", 4, 4, ComplexityClass::CN2),
        make("fast_a", 4, 4, ComplexityClass::CN),
        make("broken", 3, 4, ComplexityClass::C1),  // best class but not full pass
        make("fast_b", 4, 4, ComplexityClass::CN),
    };
    auto picked = select_time_optimal(cands);
    REQUIRE(picked.size() == 2);
    CHECK(picked[0].source == "fast_a");
    CHECK(picked[1].source == "fast_b");

    std::vector<ScoredCandidate> none = {make("broken", 1, 4, ComplexityClass::CN)};
    CHECK(select_time_optimal(none).empty());
    CHECK_THROWS_AS(select_time_optimal({}), UserError);
}

}  // TEST_SUITE
