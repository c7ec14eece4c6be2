#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "codejudge/bundle.hpp"
#include "codejudge/common.hpp"
#include "codejudge/lattice.hpp"
#include "codejudge/sandbox.hpp"

namespace codejudge {

// ============================================================
// Timing curves
// ============================================================

struct TimingPoint {
    std::int64_t size;
    double wall_ms;  // min-of-repeats, startup baseline already subtracted
};

struct TimingCurve {
    std::vector<TimingPoint> points;  // sizes strictly increasing
    int repeats = 5;
    double noise_floor_ms = 5.0;
    std::optional<std::int64_t> timeout_at;  // first size where the candidate timed out
};

struct ComplexityVerdict {
    ComplexityClass estimated = ComplexityClass::CN;
    std::map<ComplexityClass, double> residuals;  // RMS log-space fit error per class
    bool confident = false;
    std::optional<Relation> relation;  // vs the problem's reference bound
};

struct EstimatorConfig {
    std::vector<std::int64_t> schedule;
    int repeats = 5;
    double noise_floor_ms = 5.0;
    int baseline_extra_runs = 3;  // baseline measured with repeats + this many runs
    std::uint64_t input_seed = 1;

    EstimatorConfig() {
        for (int k = 8; k <= 17; ++k) schedule.push_back(std::int64_t{1} << k);
    }
};

// ============================================================
// estimate_class: least-squares in log space with a closed-form
// scale constant per class; ties within 5% break toward the
// lower class. CSUPER is never assigned by fitting.
// ============================================================

namespace detail {

inline double class_growth(ComplexityClass c, double n) {
    switch (c) {
        case ComplexityClass::C1: return 1.0;
        case ComplexityClass::CLOG: return std::log(n);
        case ComplexityClass::CN: return n;
        case ComplexityClass::CNLOGN: return n * std::log(n);
        case ComplexityClass::CN2: return n * n;
        case ComplexityClass::CN3: return n * n * n;
        case ComplexityClass::CSUPER: break;
    }
    std::abort();
}

inline constexpr std::array<ComplexityClass, 6> kFittableClasses = {
    ComplexityClass::C1,  ComplexityClass::CLOG, ComplexityClass::CN,
    ComplexityClass::CNLOGN, ComplexityClass::CN2, ComplexityClass::CN3};

}  // namespace detail

inline ComplexityVerdict estimate_class(const TimingCurve& curve) {
    if (curve.points.size() < 4) throw InsufficientPoints(curve.points.size());

    ComplexityVerdict verdict;
    for (ComplexityClass cls : detail::kFittableClasses) {
        // minimize sum_i (log t_i - log c - log g(n_i))^2 over log c:
        // log c = mean(log t_i - log g(n_i)); report RMS residual in log units
        double mean = 0.0;
        std::vector<double> errs;
        errs.reserve(curve.points.size());
        for (const auto& pt : curve.points) {
            double e = std::log(pt.wall_ms) -
                       std::log(detail::class_growth(cls, static_cast<double>(pt.size)));
            errs.push_back(e);
            mean += e;
        }
        mean /= static_cast<double>(errs.size());
        double ssr = 0.0;
        for (double e : errs) ssr += (e - mean) * (e - mean);
        verdict.residuals[cls] = std::sqrt(ssr / static_cast<double>(errs.size()));
    }

    // ascending scan: a higher class must beat the incumbent by > 5% to win
    ComplexityClass best = ComplexityClass::C1;
    double best_r = verdict.residuals.at(best);
    for (ComplexityClass cls : detail::kFittableClasses) {
        double r = verdict.residuals.at(cls);
        if (r < best_r * 0.95) {
            best = cls;
            best_r = r;
        }
    }
    verdict.estimated = best;

    double second = std::numeric_limits<double>::infinity();
    for (const auto& [cls, r] : verdict.residuals)
        if (cls != best && r < second) second = r;
    verdict.confident = best_r <= 0.25 && second > best_r * 1.05;
    return verdict;
}

// ============================================================
// Curve measurement
// ============================================================
// Inputs are generated once per (problem, size, seed) and shared across
// candidates; startup cost is removed by subtracting a per-language
// empty-program baseline measured in the same timing lane.

class InputCache {
  public:
    const std::string& get(const Problem& problem, std::int64_t size, std::uint64_t seed,
                           const RunnerRegistry& registry) {
        std::string key = problem.id + "\x1f" + std::to_string(size) + "\x1f" +
                          std::to_string(seed);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;

        const RunnerSpec& runner = registry.lookup(problem.input_generator.language_tag);
        auto compiled = compile(problem.input_generator, runner, generator_limits(problem));
        if (std::holds_alternative<CompileFailure>(compiled))
            throw GeneratorFailure(size, std::get<CompileFailure>(compiled).diagnostics);

        std::string request = std::to_string(size) + " " + std::to_string(seed) + "\n";
        ExecutionResult r =
            run(std::get<ArtifactHandle>(compiled), request, generator_limits(problem));
        if (r.status != RunStatus::ok)
            throw GeneratorFailure(size, std::string(run_status_name(r.status)) + ": " +
                                             r.stderr_data.substr(0, 400));
        return cache_.emplace(std::move(key), std::move(r.stdout_data)).first->second;
    }

  private:
    // The generator writes the test input, which can dwarf the candidate
    // output cap; give it a wider envelope than the candidate limits.
    static ResourceLimits generator_limits(const Problem& problem) {
        ResourceLimits lim = problem.limits;
        lim.wall_timeout = std::max(lim.wall_timeout, std::chrono::milliseconds(30'000));
        lim.cpu_timeout = lim.wall_timeout;
        lim.memory_cap = std::max(lim.memory_cap, std::int64_t{1} << 30);
        lim.output_cap = std::max(lim.output_cap * 8, std::int64_t{1} << 28);
        return lim;
    }

    std::map<std::string, std::string> cache_;
};

namespace detail {

inline double min_ok_wall_ms(const std::vector<ExecutionResult>& results) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : results)
        if (r.status == RunStatus::ok)
            best = std::min(best, static_cast<double>(r.wall_time.count()) / 1000.0);
    return best;
}

inline double measure_baseline_ms(const RunnerSpec& runner, const ResourceLimits& limits,
                                  int runs) {
    SourceProgram empty{runner.language_tag, runner.baseline_source};
    if (empty.source.empty()) return 0.0;
    auto compiled = compile(empty, runner, limits);
    if (std::holds_alternative<CompileFailure>(compiled))
        throw SandboxEnvironmentFailure("baseline program failed to compile for '" +
                                        runner.language_tag + "'");
    auto results = run_timed(std::get<ArtifactHandle>(compiled), "", limits, runs);
    double ms = min_ok_wall_ms(results);
    if (!std::isfinite(ms))
        throw SandboxEnvironmentFailure("baseline program failed to run for '" +
                                        runner.language_tag + "'");
    return ms;
}

}  // namespace detail

inline TimingCurve measure_curve(const SourceProgram& program, const Problem& problem,
                                 const EstimatorConfig& config, const RunnerRegistry& registry,
                                 InputCache& inputs) {
    for (std::size_t i = 1; i < config.schedule.size(); ++i)
        if (config.schedule[i] <= config.schedule[i - 1])
            throw UserError("estimator schedule must be strictly increasing");

    const RunnerSpec& runner = registry.lookup(program.language_tag);
    auto compiled = compile(program, runner, problem.limits);
    if (std::holds_alternative<CompileFailure>(compiled))
        throw UserError("candidate failed to compile: " +
                        std::get<CompileFailure>(compiled).diagnostics.substr(0, 400));
    const ArtifactHandle& handle = std::get<ArtifactHandle>(compiled);

    double baseline = detail::measure_baseline_ms(runner, problem.limits,
                                                  config.repeats + config.baseline_extra_runs);

    TimingCurve curve;
    curve.repeats = config.repeats;
    curve.noise_floor_ms = config.noise_floor_ms;
    for (std::int64_t size : config.schedule) {
        const std::string& input = inputs.get(problem, size, config.input_seed, registry);
        auto results = run_timed(handle, input, problem.limits, config.repeats);
        bool timed_out = false;
        for (const auto& r : results) {
            if (r.status == RunStatus::timeout) {
                timed_out = true;
            } else if (r.status != RunStatus::ok) {
                throw CandidateRunFailure(size, std::string(run_status_name(r.status)) + ": " +
                                                    r.stderr_data.substr(0, 400));
            }
        }
        if (timed_out) {
            curve.timeout_at = size;
            break;
        }
        double corrected = std::max(detail::min_ok_wall_ms(results) - baseline, 0.0);
        if (corrected >= config.noise_floor_ms) curve.points.push_back({size, corrected});
    }
    if (!curve.timeout_at && curve.points.size() < 4) throw InsufficientPoints(curve.points.size());
    return curve;
}

// ============================================================
// Judges: built-in empirical, or an external command speaking the
// one-request / one-class-token protocol.
// ============================================================

struct BuiltinJudge {
    EstimatorConfig config;
};

struct ExternalJudgeCommand {
    std::vector<std::string> argv;
};

using ComplexityJudge = std::variant<BuiltinJudge, ExternalJudgeCommand>;

namespace detail {

inline ComplexityVerdict run_external_judge(const ExternalJudgeCommand& judge,
                                            const SourceProgram& program,
                                            const Problem& problem) {
    nlohmann::json request = {
        {"statement", problem.statement},
        {"reference_class", std::string(class_token(problem.optimal_complexity))},
        {"language", program.language_tag},
        {"source", program.source},
    };
    SpawnRequest req;
    req.argv = judge.argv;
    std::string input = request.dump() + "\n";
    req.stdin_data = input;
    ResourceLimits lim;
    lim.wall_timeout = std::chrono::milliseconds(60'000);
    lim.cpu_timeout = lim.wall_timeout;
    req.limits = lim;
    TempDir dir;
    req.workdir = dir.path();

    ExecutionResult r = spawn_capture(req);
    if (r.status != RunStatus::ok)
        throw ExternalJudgeProtocolError("judge command failed (" +
                                         std::string(run_status_name(r.status)) + ")");
    std::string line = r.stdout_data;
    if (auto nl = line.find('\n'); nl != std::string::npos) line.resize(nl);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    auto cls = parse_class_token(line);
    if (!cls) throw ExternalJudgeProtocolError("unparseable class token: '" + line + "'");

    ComplexityVerdict verdict;
    verdict.estimated = *cls;
    verdict.confident = true;
    return verdict;
}

}  // namespace detail

inline ComplexityVerdict judge_complexity(const SourceProgram& program, const Problem& problem,
                                          const ComplexityJudge& judge,
                                          const RunnerRegistry& registry, InputCache& inputs) {
    ComplexityVerdict verdict;
    if (std::holds_alternative<ExternalJudgeCommand>(judge)) {
        verdict = detail::run_external_judge(std::get<ExternalJudgeCommand>(judge), program,
                                             problem);
    } else {
        const EstimatorConfig& config = std::get<BuiltinJudge>(judge).config;
        TimingCurve curve = measure_curve(program, problem, config, registry, inputs);
        if (curve.timeout_at) {
            // CSUPER only when the reference completes at the size where the
            // candidate timed out; otherwise the size itself is out of reach
            // and we fall back to whatever points survived.
            const RunnerSpec& ref_runner = registry.lookup(problem.reference_solution.language_tag);
            auto ref = compile(problem.reference_solution, ref_runner, problem.limits);
            if (std::holds_alternative<CompileFailure>(ref))
                throw UserError("reference solution failed to compile for problem '" +
                                problem.id + "'");
            const std::string& input =
                inputs.get(problem, *curve.timeout_at, config.input_seed, registry);
            auto ref_results =
                run_timed(std::get<ArtifactHandle>(ref), input, problem.limits, 1);
            if (!ref_results.empty() && ref_results.front().status == RunStatus::ok) {
                verdict.estimated = ComplexityClass::CSUPER;
                verdict.confident = true;
                if (curve.points.size() >= 4)
                    verdict.residuals = estimate_class(curve).residuals;
            } else if (curve.points.size() >= 4) {
                verdict = estimate_class(curve);
            } else {
                throw InsufficientPoints(curve.points.size());
            }
        } else {
            verdict = estimate_class(curve);
        }
    }
    verdict.relation = relation_to_reference(verdict.estimated, problem.optimal_complexity);
    return verdict;
}

}  // namespace codejudge
