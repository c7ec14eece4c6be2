// codejudge: batch CLI over the judging engine.
//
// Exit codes: 0 success, 1 input/validation error, 2 environment failure.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "codejudge/bundle.hpp"
#include "codejudge/common.hpp"
#include "codejudge/complexity.hpp"
#include "codejudge/correctness.hpp"
#include "codejudge/grouprl.hpp"
#include "codejudge/lattice.hpp"
#include "codejudge/pairwise.hpp"
#include "codejudge/records.hpp"
#include "codejudge/report.hpp"
#include "codejudge/reward.hpp"
#include "codejudge/sandbox.hpp"

namespace cj = codejudge;

namespace {

struct GlobalOptions {
    std::string bundle;
    std::string config;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string store = "codejudge_records.jsonl";
};

std::optional<std::int64_t> env_int(const char* name) {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    try {
        return std::stoll(v);
    } catch (const std::exception&) {
        throw cj::UserError(std::string(name) + " must be an integer, got '" + v + "'");
    }
}

nlohmann::json load_config(const GlobalOptions& opts) {
    if (opts.config.empty()) return nlohmann::json::object();
    nlohmann::json j = cj::detail::parse_json_file(opts.config);
    if (!j.is_object()) throw cj::UserError("config file must hold a JSON object");
    return j;
}

// precedence: builtin defaults < config file < environment
cj::ResourceLimits default_limits(const nlohmann::json& config) {
    cj::ResourceLimits lim;
    if (config.contains("limits"))
        lim = cj::detail::load_limits(config.at("limits"), "<config>", lim);
    if (auto v = env_int("CODEJUDGE_WALL_MS")) lim.wall_timeout = std::chrono::milliseconds(*v);
    if (auto v = env_int("CODEJUDGE_CPU_MS")) lim.cpu_timeout = std::chrono::milliseconds(*v);
    if (auto v = env_int("CODEJUDGE_MEM_BYTES")) lim.memory_cap = *v;
    if (auto v = env_int("CODEJUDGE_OUT_BYTES")) lim.output_cap = *v;
    return lim;
}

int effective_workers(const GlobalOptions& opts, bool flag_given) {
    if (flag_given) return opts.workers;
    if (auto v = env_int("CODEJUDGE_WORKERS")) return static_cast<int>(*v);
    return opts.workers;
}

cj::RunnerRegistry make_registry(const nlohmann::json& config) {
    cj::RunnerRegistry registry = cj::RunnerRegistry::builtin();
    if (config.contains("runners")) registry.apply_overrides(config.at("runners"));
    return registry;
}

cj::RewardConfig reward_config(const nlohmann::json& config) {
    cj::RewardConfig rc;
    if (!config.contains("reward")) return rc;
    const auto& j = config.at("reward");
    rc.w_f = j.value("w_f", rc.w_f);
    rc.w_t = j.value("w_t", rc.w_t);
    rc.per_step_decay = j.value("per_step_decay", rc.per_step_decay);
    return rc;
}

cj::EstimatorConfig estimator_config(const nlohmann::json& config) {
    cj::EstimatorConfig ec;
    if (!config.contains("estimator")) return ec;
    const auto& j = config.at("estimator");
    if (j.contains("schedule")) {
        ec.schedule = j.at("schedule").get<std::vector<std::int64_t>>();
    } else if (j.contains("schedule_min_exp")) {
        ec.schedule.clear();
        int lo = j.at("schedule_min_exp").get<int>();
        int hi = j.at("schedule_max_exp").get<int>();
        for (int k = lo; k <= hi; ++k) ec.schedule.push_back(std::int64_t{1} << k);
    }
    ec.repeats = j.value("repeats", ec.repeats);
    ec.noise_floor_ms = j.value("noise_floor_ms", ec.noise_floor_ms);
    ec.baseline_extra_runs = j.value("baseline_extra_runs", ec.baseline_extra_runs);
    ec.input_seed = j.value("input_seed", ec.input_seed);
    return ec;
}

cj::ComplexityJudge judge_from_config(const nlohmann::json& config,
                                      const std::string& judge_flag,
                                      const std::string& judge_cmd) {
    if (judge_flag == "external" || (judge_flag.empty() && !judge_cmd.empty())) {
        std::string cmd = judge_cmd;
        if (cmd.empty() && config.contains("judge") && config.at("judge").contains("argv")) {
            cj::ExternalJudgeCommand ext;
            ext.argv = config.at("judge").at("argv").get<std::vector<std::string>>();
            return ext;
        }
        if (cmd.empty()) throw cj::UserError("external judge selected but no command given");
        cj::ExternalJudgeCommand ext;
        for (auto w : cj::split_ws(cmd)) ext.argv.emplace_back(w);
        return ext;
    }
    if (judge_flag.empty() && config.contains("judge")) {
        const auto& j = config.at("judge");
        if (j.value("kind", "builtin") == "external") {
            cj::ExternalJudgeCommand ext;
            ext.argv = j.at("argv").get<std::vector<std::string>>();
            return ext;
        }
    }
    return cj::BuiltinJudge{estimator_config(config)};
}

std::vector<cj::Rollout> load_rollouts(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cj::UserError("cannot open rollouts file: " + path);
    std::vector<cj::Rollout> rollouts;
    std::string line;
    int lineno = 0;
    const std::vector<std::string> hints = {"python3", "cpp", "sh"};
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("problem_id") || !j.contains("rollout_index") ||
            !j.contains("response"))
            throw cj::UserError(path + ":" + std::to_string(lineno) +
                                ": rollout needs problem_id, rollout_index, response");
        cj::Rollout r;
        r.problem_id = j.at("problem_id").get<std::string>();
        r.rollout_index = j.at("rollout_index").get<int>();
        r.raw_response = j.at("response").get<std::string>();
        r.extracted_program = cj::extract_program(r.raw_response, hints);
        rollouts.push_back(std::move(r));
    }
    return rollouts;
}

std::string fmt_double(double v) {
    std::ostringstream ss;
    ss.precision(12);
    ss << v;
    return ss.str();
}

cj::SourceProgram load_source_file(const std::string& path, std::string language) {
    if (language.empty()) {
        auto dot = path.rfind('.');
        std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
        language = cj::detail::normalize_language(ext);
        if (language != "python3" && language != "cpp" && language != "sh")
            throw cj::UserError("cannot infer language from '" + path +
                                "'; pass --language");
    } else {
        language = cj::detail::normalize_language(language);
    }
    return cj::SourceProgram{language, cj::detail::read_file(path)};
}

nlohmann::json config_snapshot(const GlobalOptions& opts, const nlohmann::json& config,
                               const nlohmann::json& extra) {
    nlohmann::json snap = {{"config", config}, {"seed", opts.seed},
                           {"workers", opts.workers}, {"bundle", opts.bundle}};
    for (auto it = extra.begin(); it != extra.end(); ++it) snap[it.key()] = it.value();
    return snap;
}

cj::FilterBand parse_band(const std::string& text) {
    std::string digits = text;
    for (char& c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c))) c = ' ';
    auto words = cj::split_ws(digits);
    if (words.size() != 2)
        throw cj::UserError("band must look like MIN:MAX, got '" + text + "'");
    return {std::stoi(std::string(words[0])), std::stoi(std::string(words[1]))};
}

// ------------------------------------------------------------
// subcommands
// ------------------------------------------------------------

int run_ingest(const GlobalOptions& opts) {
    nlohmann::json config = load_config(opts);
    cj::ResourceLimits defaults = default_limits(config);
    auto issues = cj::validate_bundle(opts.bundle, defaults);
    if (!issues.empty()) {
        for (const auto& issue : issues) std::cout << issue << "\n";
        std::cout << "invalid: " << issues.size() << " issue(s)\n";
        return 1;
    }
    auto problems = cj::load_bundle(opts.bundle, defaults);
    for (const auto& p : problems)
        std::cout << p.id << "  " << cj::class_token(p.optimal_complexity) << "  "
                  << p.tests.size() << " tests\n";
    std::cout << "valid: " << problems.size() << " problems\n";
    return 0;
}

int run_exec(const GlobalOptions& opts, bool workers_flag, const std::string& problem_id,
             const std::string& source_path, const std::string& language,
             const std::string& input_path) {
    nlohmann::json config = load_config(opts);
    cj::RunnerRegistry registry = make_registry(config);
    cj::ResourceLimits defaults = default_limits(config);
    auto problems = cj::load_bundle(opts.bundle, defaults);
    auto it = std::find_if(problems.begin(), problems.end(),
                           [&](const cj::Problem& p) { return p.id == problem_id; });
    if (it == problems.end()) throw cj::UnknownProblemId(problem_id);
    const cj::Problem& problem = *it;
    cj::SourceProgram program = load_source_file(source_path, language);
    (void)workers_flag;

    nlohmann::json snapshot =
        config_snapshot(opts, config, {{"problem", problem_id}, {"source", source_path}});
    cj::RecordStore store(opts.store, cj::make_run_id("exec", snapshot, opts.seed), "exec",
                          snapshot);

    const cj::RunnerSpec& runner = registry.lookup(program.language_tag);
    auto compiled = cj::compile(program, runner, problem.limits);
    if (std::holds_alternative<cj::CompileFailure>(compiled)) {
        std::cout << "compile failed:\n"
                  << std::get<cj::CompileFailure>(compiled).diagnostics << "\n";
        store.close("success");
        return 0;
    }
    const cj::ArtifactHandle& handle = std::get<cj::ArtifactHandle>(compiled);

    if (!input_path.empty()) {
        std::string input = cj::detail::read_file(input_path);
        cj::ExecutionResult r = cj::run(handle, input, problem.limits);
        store.append_execution({{"problem_id", problem_id}, {"input", input_path}}, r);
        std::cout << r.stdout_data;
        std::cerr << "status: " << cj::run_status_name(r.status)
                  << "  wall_ms: " << r.wall_time.count() / 1000
                  << "  exit: " << r.exit_code << "\n";
        store.close("success");
        return 0;
    }

    int passed = 0;
    for (std::size_t i = 0; i < problem.tests.size(); ++i) {
        const cj::TestCase& tc = problem.tests[i];
        cj::ExecutionResult r = cj::run(handle, tc.input, problem.limits);
        store.append_execution(
            {{"problem_id", problem_id}, {"test_index", static_cast<int>(i)}}, r);
        bool ok = r.status == cj::RunStatus::ok &&
                  cj::compare_output(r.stdout_data, tc.expected_output, tc.compare_mode);
        if (ok) ++passed;
        std::cout << "test " << i << ": " << (ok ? "pass" : "fail");
        if (!ok) std::cout << " (" << cj::run_status_name(r.status) << ")";
        std::cout << "\n";
    }
    std::cout << "passed " << passed << "/" << problem.tests.size() << "\n";
    store.close("success");
    return 0;
}

int run_score(const GlobalOptions& opts, bool workers_flag, const std::string& rollouts_path,
              const std::string& stage_str, bool json_out) {
    nlohmann::json config = load_config(opts);
    cj::RunnerRegistry registry = make_registry(config);
    cj::ResourceLimits defaults = default_limits(config);
    auto stage = cj::parse_stage(stage_str);
    if (!stage) throw cj::UserError("stage must be stage1 or stage2, got '" + stage_str + "'");
    int workers = effective_workers(opts, workers_flag);

    auto problems = cj::load_bundle(opts.bundle, defaults);
    std::map<std::string, const cj::Problem*> by_id;
    for (const auto& p : problems) by_id[p.id] = &p;
    auto rollouts = load_rollouts(rollouts_path);
    cj::RewardConfig rc = reward_config(config);
    cj::ComplexityJudge judge = judge_from_config(config, "", "");

    nlohmann::json snapshot =
        config_snapshot(opts, config, {{"rollouts", rollouts_path}, {"stage", stage_str}});
    cj::RecordStore store(opts.store, cj::make_run_id("score", snapshot, opts.seed), "score",
                          snapshot);
    cj::InputCache inputs;
    std::vector<cj::ReportRow> rows;

    for (const auto& r : rollouts) {
        auto found = by_id.find(r.problem_id);
        if (found == by_id.end()) throw cj::UnknownProblemId(r.problem_id);
        const cj::Problem& problem = *found->second;

        cj::PassRate pass{0, static_cast<int>(problem.tests.size())};
        std::optional<bool> compile_ok;
        int timeouts = 0;
        if (r.extracted_program) {
            if (!registry.has(r.extracted_program->language_tag)) {
                // a fence in a language we cannot run scores like a compile failure
                compile_ok = false;
            } else {
                cj::JudgeOutcome outcome =
                    cj::judge_candidate(*r.extracted_program, problem, registry, workers);
                pass = outcome.pass;
                compile_ok = !outcome.compile_failed;
                for (const auto& v : outcome.verdicts)
                    if (!v.passed && v.failure_kind == cj::FailureKind::timeout) ++timeouts;
            }
        }

        std::optional<cj::ComplexityVerdict> verdict;
        if (*stage == cj::Stage::stage2 && pass.full())
            verdict = cj::judge_complexity(*r.extracted_program, problem, judge, registry,
                                           inputs);

        cj::RewardBreakdown breakdown =
            cj::compose_reward(r, pass, verdict, rc, *stage, compile_ok);
        nlohmann::json subject = {{"problem_id", r.problem_id},
                                  {"rollout_index", r.rollout_index}};
        store.append_reward(subject, breakdown, pass, *stage);
        if (verdict) store.append_verdict(subject, *verdict);

        cj::ReportRow row;
        row.problem_id = r.problem_id;
        row.rollout_index = r.rollout_index;
        row.pass = pass;
        row.reward = breakdown;
        row.verdict = verdict;
        row.timed_out_runs = timeouts;
        rows.push_back(std::move(row));
    }

    cj::Report report = cj::make_report(std::move(rows));
    if (json_out)
        std::cout << cj::to_json(report).dump(2) << "\n";
    else
        std::cout << cj::format_table(report);
    store.close("success");
    return 0;
}

int run_estimate(const GlobalOptions& opts, const std::string& problem_id,
                 const std::string& candidate_path, const std::string& language,
                 const std::string& judge_flag, const std::string& judge_cmd) {
    nlohmann::json config = load_config(opts);
    cj::RunnerRegistry registry = make_registry(config);
    cj::ResourceLimits defaults = default_limits(config);
    auto problems = cj::load_bundle(opts.bundle, defaults);
    auto it = std::find_if(problems.begin(), problems.end(),
                           [&](const cj::Problem& p) { return p.id == problem_id; });
    if (it == problems.end()) throw cj::UnknownProblemId(problem_id);
    const cj::Problem& problem = *it;
    cj::SourceProgram program = load_source_file(candidate_path, language);
    cj::ComplexityJudge judge = judge_from_config(config, judge_flag, judge_cmd);

    nlohmann::json snapshot = config_snapshot(
        opts, config, {{"problem", problem_id}, {"candidate", candidate_path}});
    cj::RecordStore store(opts.store, cj::make_run_id("estimate", snapshot, opts.seed),
                          "estimate", snapshot);

    cj::InputCache inputs;
    cj::ComplexityVerdict verdict =
        cj::judge_complexity(program, problem, judge, registry, inputs);
    store.append_verdict({{"problem_id", problem_id}, {"candidate", candidate_path}}, verdict);

    std::cout << "estimated: " << cj::class_token(verdict.estimated) << "\n";
    std::cout << "confident: " << (verdict.confident ? "true" : "false") << "\n";
    if (verdict.relation) {
        std::cout << "relation: " << cj::relation_name(verdict.relation->kind);
        if (verdict.relation->kind == cj::Relation::Kind::worse)
            std::cout << " by " << verdict.relation->steps << " step(s)";
        std::cout << " vs " << cj::class_token(problem.optimal_complexity) << "\n";
    }
    for (const auto& [cls, res] : verdict.residuals)
        std::cout << "residual " << cj::class_token(cls) << ": " << fmt_double(res) << "\n";
    store.close("success");
    return 0;
}

int run_filter(const GlobalOptions& opts, bool workers_flag, const std::string& rollouts_path,
               const std::string& criterion_str, const std::string& band_str) {
    nlohmann::json config = load_config(opts);
    cj::RunnerRegistry registry = make_registry(config);
    cj::ResourceLimits defaults = default_limits(config);
    int workers = effective_workers(opts, workers_flag);
    cj::FilterBand band = band_str.empty() ? cj::FilterBand{} : parse_band(band_str);
    bool difficulty = criterion_str == "difficulty";
    if (!difficulty && criterion_str != "complexity")
        throw cj::UserError("criterion must be difficulty or complexity");

    auto problems = cj::load_bundle(opts.bundle, defaults);
    auto rollouts = load_rollouts(rollouts_path);
    cj::ComplexityJudge judge = judge_from_config(config, "", "");

    nlohmann::json snapshot = config_snapshot(
        opts, config,
        {{"rollouts", rollouts_path},
         {"criterion", criterion_str},
         {"band", {band.k_min, band.k_max}}});
    cj::RecordStore store(opts.store, cj::make_run_id("filter", snapshot, opts.seed), "filter",
                          snapshot);
    cj::InputCache inputs;

    for (const auto& problem : problems) {
        cj::RolloutGroup group;
        group.problem_id = problem.id;
        for (const auto& r : rollouts) {
            if (r.problem_id != problem.id) continue;
            bool success = false;
            if (r.extracted_program) {
                if (registry.has(r.extracted_program->language_tag)) {
                    cj::JudgeOutcome outcome =
                        cj::judge_candidate(*r.extracted_program, problem, registry, workers);
                    success = outcome.pass.full();
                    if (success && !difficulty) {
                        cj::ComplexityVerdict v = cj::judge_complexity(
                            *r.extracted_program, problem, judge, registry, inputs);
                        success = v.relation && v.relation->kind != cj::Relation::Kind::worse;
                    }
                }
            }
            group.success_flags.push_back(success);
            group.rewards.push_back(success ? 1.0 : 0.0);
        }
        if (group.success_flags.empty()) continue;
        cj::FilterDecision decision = difficulty ? cj::stage1_filter(group, band)
                                                 : cj::stage2_filter(group, band);
        store.append_filter(decision);
        if (decision.kept) std::cout << decision.problem_id << "\n";
    }
    store.close("success");
    return 0;
}

int run_advantage(const GlobalOptions& opts, const std::string& rewards_path, double epsilon) {
    std::ifstream in(rewards_path, std::ios::binary);
    if (!in) throw cj::UserError("cannot open rewards file: " + rewards_path);

    nlohmann::json config = load_config(opts);
    nlohmann::json snapshot =
        config_snapshot(opts, config, {{"rewards", rewards_path}, {"epsilon", epsilon}});
    cj::RecordStore store(opts.store, cj::make_run_id("advantage", snapshot, opts.seed),
                          "advantage", snapshot);

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("problem_id") || !j.contains("rewards"))
            throw cj::UserError(rewards_path + ":" + std::to_string(lineno) +
                                ": expected {problem_id, rewards}");
        cj::RolloutGroup group;
        group.problem_id = j.at("problem_id").get<std::string>();
        group.rewards = j.at("rewards").get<std::vector<double>>();
        cj::AdvantageSet adv = cj::compute_advantages(group, epsilon);
        store.append_advantages(adv);
        std::cout << adv.problem_id << ":";
        for (double a : adv.advantages) std::cout << " " << fmt_double(a);
        std::cout << "\n";
    }
    store.close("success");
    return 0;
}

int run_pairtrain(const GlobalOptions& opts, const std::string& dataset_path,
                  const std::string& out_path, const std::string& curve_path) {
    std::ifstream in(dataset_path, std::ios::binary);
    if (!in) throw cj::UserError("cannot open dataset: " + dataset_path);
    std::vector<cj::LabeledPair> labeled;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("context") || !j.contains("response_a") ||
            !j.contains("response_b") || !j.contains("outcome"))
            throw cj::UserError(dataset_path + ":" + std::to_string(lineno) +
                                ": expected {context, response_a, response_b, outcome}");
        auto outcome = cj::parse_pair_outcome(j.at("outcome").get<std::string>());
        if (!outcome)
            throw cj::UserError(dataset_path + ":" + std::to_string(lineno) +
                                ": unknown outcome");
        cj::ResponsePair pair{j.at("context").get<std::string>(),
                              j.at("response_a").get<std::string>(),
                              j.at("response_b").get<std::string>()};
        labeled.emplace_back(std::move(pair), *outcome);
    }

    nlohmann::json config = load_config(opts);
    cj::TrainConfig tc;
    tc.seed = opts.seed;
    if (config.contains("train")) {
        const auto& j = config.at("train");
        tc.learning_rate = j.value("learning_rate", tc.learning_rate);
        tc.epochs = j.value("epochs", tc.epochs);
        tc.lambda_swap = j.value("lambda_swap", tc.lambda_swap);
    }

    cj::TrainResult result = cj::train_pairwise_scorer(labeled, tc);
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw cj::EnvironmentError("cannot write scorer file: " + out_path);
    out << result.scorer.to_json().dump(2) << "\n";

    if (!curve_path.empty()) {
        std::ofstream curve(curve_path, std::ios::binary | std::ios::trunc);
        if (!curve) throw cj::EnvironmentError("cannot write curve file: " + curve_path);
        curve << nlohmann::json(result.loss_curve).dump() << "\n";
    }
    std::cout << "pairs: " << labeled.size() << "  epochs: " << result.loss_curve.size()
              << "  final_loss: " << fmt_double(result.loss_curve.back())
              << "  accuracy: " << fmt_double(result.final_accuracy) << "\n";
    return 0;
}

int run_report(const std::string& store_path, bool json_out) {
    cj::StoreReplay replay = cj::replay_store(store_path);
    std::vector<cj::ReportRow> rows;
    std::map<std::pair<std::string, int>, std::size_t> row_index;
    std::map<std::string, cj::FilterDecision> filters;

    for (const auto& rec : replay.records) {
        if (rec.type == "reward_breakdown") {
            cj::ReportRow row;
            row.problem_id = rec.subject.value("problem_id", "");
            row.rollout_index = rec.subject.value("rollout_index", 0);
            row.reward = cj::reward_from_json(rec.data);
            row.pass = cj::passrate_from_json(rec.data.at("pass"));
            row_index[{row.problem_id, row.rollout_index}] = rows.size();
            rows.push_back(std::move(row));
        } else if (rec.type == "complexity_verdict") {
            auto key = std::make_pair(rec.subject.value("problem_id", ""),
                                      rec.subject.value("rollout_index", 0));
            auto it = row_index.find(key);
            if (it != row_index.end())
                rows[it->second].verdict = cj::verdict_from_json(rec.data);
        } else if (rec.type == "filter_decision") {
            cj::FilterDecision d = cj::filter_from_json(rec.data);
            filters[d.problem_id] = d;
        }
    }
    for (auto& row : rows) {
        auto it = filters.find(row.problem_id);
        if (it != filters.end()) row.filter = it->second;
    }

    cj::Report report = cj::make_report(std::move(rows));
    if (json_out)
        std::cout << cj::to_json(report).dump(2) << "\n";
    else
        std::cout << cj::format_table(report);
    if (!filters.empty()) {
        std::cout << "kept:";
        for (const auto& [id, d] : filters)
            if (d.kept) std::cout << " " << id;
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"judging and reward engine for code RL"};
    app.set_version_flag("--version", cj::engine_version());
    app.require_subcommand(1);

    GlobalOptions opts;
    app.add_option("--bundle", opts.bundle, "problem bundle directory");
    app.add_option("--config", opts.config, "JSON config file");
    app.add_option("--seed", opts.seed, "deterministic seed");
    auto* workers_opt = app.add_option("--workers", opts.workers, "parallel test workers");
    app.add_option("--store", opts.store, "record store output path");

    std::function<int()> action;

    auto* ingest = app.add_subcommand("ingest", "validate a bundle");
    ingest->callback([&] { action = [&] { return run_ingest(opts); }; });

    auto* exec = app.add_subcommand("exec", "run a candidate against a problem");
    std::string exec_problem, exec_source, exec_language, exec_input;
    exec->add_option("--problem", exec_problem, "problem id")->required();
    exec->add_option("--source", exec_source, "candidate source file")->required();
    exec->add_option("--language", exec_language, "language tag (inferred by default)");
    exec->add_option("--input", exec_input, "raw input file instead of bundled tests");
    exec->callback([&] {
        action = [&] {
            return run_exec(opts, workers_opt->count() > 0, exec_problem, exec_source,
                            exec_language, exec_input);
        };
    });

    auto* score = app.add_subcommand("score", "judge rollouts and compose rewards");
    std::string score_rollouts, score_stage = "stage1";
    bool score_json = false;
    score->add_option("--rollouts", score_rollouts, "rollouts JSONL")->required();
    score->add_option("--stage", score_stage, "stage1 | stage2");
    score->add_flag("--json", score_json, "machine-readable report");
    score->callback([&] {
        action = [&] {
            try {
                return run_score(opts, workers_opt->count() > 0, score_rollouts, score_stage,
                                 score_json);
            } catch (const cj::UnknownProblemId& e) {
                // referential integrity between rollouts and bundle is treated
                // as an environment-level fault for scoring runs
                std::cerr << "error: " << e.what() << "\n";
                return 2;
            }
        };
    });

    auto* estimate = app.add_subcommand("estimate", "estimate a candidate's complexity class");
    std::string est_problem, est_candidate, est_language, est_judge, est_judge_cmd;
    estimate->add_option("--problem", est_problem, "problem id")->required();
    estimate->add_option("--candidate", est_candidate, "candidate source file")->required();
    estimate->add_option("--language", est_language, "language tag (inferred by default)");
    estimate->add_option("--judge", est_judge, "builtin | external");
    estimate->add_option("--judge-cmd", est_judge_cmd, "external judge command line");
    estimate->callback([&] {
        action = [&] {
            return run_estimate(opts, est_problem, est_candidate, est_language, est_judge,
                                est_judge_cmd);
        };
    });

    auto* filter = app.add_subcommand("filter", "on-policy problem filtering");
    std::string filter_rollouts, filter_criterion = "difficulty", filter_band;
    filter->add_option("--rollouts", filter_rollouts, "rollouts JSONL")->required();
    filter->add_option("--criterion", filter_criterion, "difficulty | complexity");
    filter->add_option("--band", filter_band, "keep band MIN:MAX (default 1:5)");
    filter->callback([&] {
        action = [&] {
            return run_filter(opts, workers_opt->count() > 0, filter_rollouts,
                              filter_criterion, filter_band);
        };
    });

    auto* advantage = app.add_subcommand("advantage", "GRPO group advantages");
    std::string adv_rewards;
    double adv_epsilon = 1e-8;
    advantage->add_option("--rewards", adv_rewards, "rewards JSONL")->required();
    advantage->add_option("--epsilon", adv_epsilon, "degenerate-group threshold");
    advantage->callback([&] {
        action = [&] { return run_advantage(opts, adv_rewards, adv_epsilon); };
    });

    auto* pairtrain = app.add_subcommand("pairtrain", "train the pairwise scorer");
    std::string pt_dataset, pt_out = "scorer.json", pt_curve;
    pairtrain->add_option("--dataset", pt_dataset, "labeled pairs JSONL")->required();
    pairtrain->add_option("--out", pt_out, "scorer output file");
    pairtrain->add_option("--curve-out", pt_curve, "loss curve output file");
    pairtrain->callback([&] {
        action = [&] { return run_pairtrain(opts, pt_dataset, pt_out, pt_curve); };
    });

    auto* report = app.add_subcommand("report", "rebuild a report from a record store");
    std::string report_store;
    bool report_json = false;
    report->add_option("--store", report_store, "record store to read")->required();
    report->add_flag("--json", report_json, "machine-readable report");
    report->callback([&] {
        action = [&] { return run_report(report_store, report_json); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        return action();
    } catch (const cj::UserError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const cj::EnvironmentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 2;
    }
}
