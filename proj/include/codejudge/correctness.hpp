#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "codejudge/bundle.hpp"
#include "codejudge/common.hpp"
#include "codejudge/sandbox.hpp"

namespace codejudge {

// ============================================================
// Pass rate as an exact rational: the PassRate = 1 gate is an
// equality test on integers, never a float comparison.
// ============================================================

struct PassRate {
    int passed_count = 0;
    int total_count = 1;

    double value() const { return static_cast<double>(passed_count) / total_count; }
    bool full() const { return passed_count == total_count; }
    bool zero() const { return passed_count == 0; }
};

enum class FailureKind { wrong_answer, timeout, runtime_error, compile_error, memory_exceeded };

inline std::string_view failure_kind_name(FailureKind k) {
    switch (k) {
        case FailureKind::wrong_answer: return "wrong_answer";
        case FailureKind::timeout: return "timeout";
        case FailureKind::runtime_error: return "runtime_error";
        case FailureKind::compile_error: return "compile_error";
        case FailureKind::memory_exceeded: return "memory_exceeded";
    }
    std::abort();
}

struct TestVerdict {
    int test_index = 0;
    bool passed = false;
    std::optional<FailureKind> failure_kind;
};

// ============================================================
// Output comparison
// ============================================================

namespace detail {

inline std::string trim_output(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t nl = text.find('\n', i);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(i) : text.substr(i, nl - i);
        while (!line.empty() &&
               (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.remove_suffix(1);
        out.append(line);
        if (nl == std::string_view::npos) break;
        out.push_back('\n');
        i = nl + 1;
    }
    while (!out.empty() && out.back() == '\n') out.pop_back();
    return out;
}

}  // namespace detail

inline bool compare_output(std::string_view actual, std::string_view expected, CompareMode mode) {
    switch (mode) {
        case CompareMode::exact:
            return actual == expected;
        case CompareMode::trimmed:
            return detail::trim_output(actual) == detail::trim_output(expected);
        case CompareMode::token:
            return split_ws(actual) == split_ws(expected);
    }
    std::abort();
}

// ============================================================
// Candidate judging: run every test, no early exit
// ============================================================

struct JudgeOutcome {
    std::vector<TestVerdict> verdicts;
    PassRate pass;
    bool compile_failed = false;
    std::string compile_diagnostics;
};

inline FailureKind failure_kind_of(const ExecutionResult& r) {
    switch (r.status) {
        case RunStatus::timeout: return FailureKind::timeout;
        case RunStatus::memory_exceeded: return FailureKind::memory_exceeded;
        case RunStatus::runtime_error: return FailureKind::runtime_error;
        case RunStatus::compile_error: return FailureKind::compile_error;
        default: return FailureKind::wrong_answer;  // truncated or wrong content
    }
}

inline JudgeOutcome judge_candidate(const SourceProgram& program, const Problem& problem,
                                    const RunnerRegistry& registry, int workers = 1) {
    JudgeOutcome out;
    int total = static_cast<int>(problem.tests.size());
    out.pass.total_count = total;

    const RunnerSpec& runner = registry.lookup(program.language_tag);
    auto compiled = compile(program, runner, problem.limits);
    if (std::holds_alternative<CompileFailure>(compiled)) {
        out.compile_failed = true;
        out.compile_diagnostics = std::get<CompileFailure>(compiled).diagnostics;
        for (int i = 0; i < total; ++i)
            out.verdicts.push_back({i, false, FailureKind::compile_error});
        return out;
    }
    const ArtifactHandle& handle = std::get<ArtifactHandle>(compiled);

    out.verdicts.resize(static_cast<std::size_t>(total));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;

    auto work = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= total) return;
            try {
                const TestCase& tc = problem.tests[static_cast<std::size_t>(i)];
                ExecutionResult r = run(handle, tc.input, problem.limits);
                TestVerdict v;
                v.test_index = i;
                if (r.status == RunStatus::ok &&
                    compare_output(r.stdout_data, tc.expected_output, tc.compare_mode)) {
                    v.passed = true;
                } else {
                    v.passed = false;
                    v.failure_kind = failure_kind_of(r);
                }
                out.verdicts[static_cast<std::size_t>(i)] = v;
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mu);
                if (!failure) failure = std::current_exception();
                next.store(total);
                return;
            }
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        int width = std::min(workers, total);
        pool.reserve(static_cast<std::size_t>(width));
        for (int w = 0; w < width; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (const auto& v : out.verdicts)
        if (v.passed) ++out.pass.passed_count;
    return out;
}

}  // namespace codejudge
