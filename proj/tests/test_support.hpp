#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "codejudge/sandbox.hpp"

#ifndef CODEJUDGE_SOURCE_DIR
#error "build must define CODEJUDGE_SOURCE_DIR"
#endif

namespace testsup {

inline std::filesystem::path source_dir() { return CODEJUDGE_SOURCE_DIR; }
inline std::filesystem::path fixture(const std::string& rel) {
    return source_dir() / "fixtures" / rel;
}
inline std::filesystem::path stub(const std::string& name) {
    return source_dir() / "tests" / "stubs" / name;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Spawn the built CLI with cwd = workdir so relative outputs land there.
inline CliResult run_cli(const std::string& cli_path, std::vector<std::string> args,
                         const std::filesystem::path& workdir,
                         const std::string& stdin_data = "") {
    codejudge::detail::SpawnRequest req;
    req.argv.push_back(cli_path);
    for (auto& a : args) req.argv.push_back(std::move(a));
    req.workdir = workdir;
    req.stdin_data = stdin_data;
    req.limits.wall_timeout = std::chrono::milliseconds(120'000);
    req.limits.cpu_timeout = req.limits.wall_timeout;
    req.limits.memory_cap = 2ll * 1024 * 1024 * 1024;
    req.limits.output_cap = 64ll * 1024 * 1024;
    codejudge::ExecutionResult r = codejudge::detail::spawn_capture(req);
    return {r.exit_code, r.stdout_data, r.stderr_data};
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& body) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << body;
}

// fenced rollout helper
inline codejudge::Rollout make_rollout(const std::string& problem_id, int index,
                                       const std::string& lang, const std::string& body) {
    codejudge::Rollout r;
    r.problem_id = problem_id;
    r.rollout_index = index;
    r.raw_response = "Here is my solution:\n```" + lang + "\n" + body + "\n```\n";
    r.extracted_program = codejudge::extract_program(r.raw_response, {"python3", "cpp", "sh"});
    return r;
}

}  // namespace testsup
