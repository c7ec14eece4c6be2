#include <doctest.h>

#include <filesystem>

#include "codejudge/bundle.hpp"
#include "test_support.hpp"

using namespace codejudge;
namespace fs = std::filesystem;

static const std::vector<std::string> kHints = {"python3", "cpp", "sh"};

TEST_SUITE("bundle") {

TEST_CASE("extract_program picks the last hinted fence") {
    std::string text =
        "First idea:\n```python\nprint(1)\n```\n"
        "Better:\n```py\nprint(2)\n```\nDone.\n";
    auto p = extract_program(text, kHints);
    REQUIRE(p.has_value());
    CHECK(p->language_tag == "python3");
    CHECK(p->source == "print(2)\n");
}

TEST_CASE("extract_program falls back to the last block when no hint matches") {
    std::string text = "```text\nnot code\n```\n```\nx = 1\n```\n";
    auto p = extract_program(text, kHints);
    REQUIRE(p.has_value());
    CHECK(p->source == "x = 1\n");
}

TEST_CASE("extract_program normalizes language aliases") {
    auto p = extract_program("```c++\nint main(){}\n```", kHints);
    REQUIRE(p.has_value());
    CHECK(p->language_tag == "cpp");
    p = extract_program("```bash\necho hi\n```", kHints);
    REQUIRE(p.has_value());
    CHECK(p->language_tag == "sh");
}

TEST_CASE("extract_program rejects blank and missing blocks") {
    CHECK_FALSE(extract_program("no code here", kHints).has_value());
    CHECK_FALSE(extract_program("```python\n\n  \n```", kHints).has_value());
    // unterminated fence is not a block
    CHECK_FALSE(extract_program("```python\nprint(1)\n", kHints).has_value());
}

TEST_CASE("load_bundle reads problems sorted by id with file-backed tests") {
    auto problems = load_bundle(testsup::fixture("mini"), ResourceLimits{});
    REQUIRE(problems.size() == 2);
    CHECK(problems[0].id == "m1_interval_sum");
    CHECK(problems[1].id == "m2_distinct_count");
    const Problem& m1 = problems[0];
    CHECK(m1.optimal_complexity == ComplexityClass::CN);
    CHECK(m1.tests.size() == 4);
    CHECK(m1.tests[0].input == "3\n1 2 3\n");
    CHECK(m1.tests[0].expected_output == "6\n");
    CHECK(m1.limits.wall_timeout.count() == 5000);
    CHECK_FALSE(m1.reference_solution.source.empty());
    CHECK_FALSE(m1.input_generator.source.empty());
}

TEST_CASE("validate_bundle names the offending problem and field") {
    auto issues = validate_bundle(testsup::fixture("bad/missing_generator"), ResourceLimits{});
    REQUIRE_FALSE(issues.empty());
    bool named = false;
    for (const auto& s : issues)
        if (s.find("p_broken") != std::string::npos &&
            s.find("input_generator") != std::string::npos)
            named = true;
    CHECK(named);
}

TEST_CASE("limits schema rejects zero and inverted timeouts") {
    nlohmann::json bad = {{"wall_timeout_ms", 0}};
    CHECK_THROWS_AS(detail::load_limits(bad, "p", ResourceLimits{}), SchemaViolation);
    nlohmann::json inverted = {{"wall_timeout_ms", 100}, {"cpu_timeout_ms", 200}};
    CHECK_THROWS_AS(detail::load_limits(inverted, "p", ResourceLimits{}), SchemaViolation);
    nlohmann::json ok = {{"wall_timeout_ms", 200}, {"cpu_timeout_ms", 100}};
    auto lim = detail::load_limits(ok, "p", ResourceLimits{});
    CHECK(lim.wall_timeout.count() == 200);
    CHECK(lim.cpu_timeout.count() == 100);
}

TEST_CASE("duplicate problem ids are rejected") {
    codejudge::detail::TempDir dir;
    fs::create_directories(dir.path() / "a");
    testsup::spit(dir.path() / "manifest.json", R"({"problems": ["a", "a"]})");
    testsup::spit(dir.path() / "a" / "problem.json", R"json({
        "id": "a", "statement": "echo", "optimal_complexity": "O(n)",
        "reference_solution": {"language": "python3", "path": "ref.py"},
        "input_generator": {"language": "python3", "path": "gen.py"},
        "tests": [{"input": "x\n", "output": "x"}]
    })json");
    testsup::spit(dir.path() / "a" / "ref.py", "print(input())\n");
    testsup::spit(dir.path() / "a" / "gen.py", "print('x')\n");
    CHECK_THROWS_AS(load_bundle(dir.path(), ResourceLimits{}), DuplicateId);
}

}  // TEST_SUITE
