// Score a handful of sampled responses against an in-memory problem,
// then turn the rewards into GRPO advantages.
#include <iostream>

#include "codejudge/correctness.hpp"
#include "codejudge/grouprl.hpp"
#include "codejudge/reward.hpp"

using namespace codejudge;

int main() {
    Problem problem;
    problem.id = "sum_list";
    problem.statement = "Read n, then n integers; print their sum.";
    problem.optimal_complexity = ComplexityClass::CN;
    problem.tests = {
        {"5\n1 2 3 4 5\n", "15\n", CompareMode::trimmed},
        {"3\n-1 0 1\n", "0\n", CompareMode::trimmed},
        {"1\n42\n", "42\n", CompareMode::trimmed},
    };

    const std::vector<std::string> responses = {
        "Straightforward scan:\n```python\nimport sys\n"
        "data = sys.stdin.read().split()\nn = int(data[0])\n"
        "print(sum(map(int, data[1:1 + n])))\n```\n",
        "```python\nimport sys\ndata = sys.stdin.read().split()\n"
        "print(max(map(int, data[1:])))\n```\n",
        "I would use a segment tree here, but ran out of time.\n",
    };

    RunnerRegistry registry = RunnerRegistry::builtin();
    RewardConfig reward_config;
    RolloutGroup group;
    group.problem_id = problem.id;

    for (std::size_t i = 0; i < responses.size(); ++i) {
        Rollout rollout;
        rollout.problem_id = problem.id;
        rollout.rollout_index = static_cast<int>(i);
        rollout.raw_response = responses[i];
        rollout.extracted_program = extract_program(rollout.raw_response, {"python3"});

        PassRate pass{0, static_cast<int>(problem.tests.size())};
        if (rollout.extracted_program)
            pass = judge_candidate(*rollout.extracted_program, problem, registry).pass;

        RewardBreakdown b =
            compose_reward(rollout, pass, std::nullopt, reward_config, Stage::stage1);
        group.rewards.push_back(b.total);
        group.success_flags.push_back(pass.full());
        std::cout << "rollout " << i << ": pass " << pass.passed_count << "/"
                  << pass.total_count << "  reward " << b.total << "\n";
    }

    AdvantageSet adv = compute_advantages(group);
    std::cout << "advantages:";
    for (double a : adv.advantages) std::cout << " " << a;
    std::cout << "\n";

    FilterDecision keep = stage1_filter(group, {1, 2});
    std::cout << "kept for training: " << (keep.kept ? "yes" : "no") << " (k = " << keep.k
              << ")\n";
    return 0;
}
