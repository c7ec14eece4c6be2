#pragma once

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "codejudge/bundle.hpp"
#include "codejudge/common.hpp"

namespace codejudge {

// ============================================================
// Runner registry
// ============================================================

struct RunnerSpec {
    std::string language_tag;
    std::vector<std::string> compile_command;  // empty for interpreted languages
    std::vector<std::string> run_command;      // placeholders: {source} {artifact} {input}
    enum class WorkdirPolicy { fresh_temp, reuse } workdir_policy = WorkdirPolicy::fresh_temp;
    std::string source_filename = "main.txt";
    std::string baseline_source;  // minimal do-nothing program, for startup calibration
};

namespace detail {

inline const std::vector<std::string>& allowed_placeholders() {
    static const std::vector<std::string> ph = {"{source}", "{artifact}", "{input}"};
    return ph;
}

inline void validate_template(const std::vector<std::string>& tmpl, const std::string& tag) {
    for (const auto& word : tmpl) {
        std::size_t pos = 0;
        while ((pos = word.find('{', pos)) != std::string::npos) {
            std::size_t end = word.find('}', pos);
            if (end == std::string::npos) break;
            std::string token = word.substr(pos, end - pos + 1);
            const auto& ok = allowed_placeholders();
            if (std::find(ok.begin(), ok.end(), token) == ok.end())
                throw UserError("runner '" + tag + "': unknown placeholder " + token);
            pos = end + 1;
        }
    }
}

}  // namespace detail

class RunnerRegistry {
  public:
    static RunnerRegistry builtin() {
        RunnerRegistry reg;
        RunnerSpec py;
        py.language_tag = "python3";
        py.run_command = {"python3", "{source}"};
        py.source_filename = "main.py";
        py.baseline_source = "pass\n";
        reg.add(py);

        RunnerSpec cpp;
        cpp.language_tag = "cpp";
        cpp.compile_command = {"g++", "-O2", "-std=c++20", "-o", "{artifact}", "{source}"};
        cpp.run_command = {"{artifact}"};
        cpp.source_filename = "main.cpp";
        cpp.baseline_source = "int main() { return 0; }\n";
        reg.add(cpp);

        RunnerSpec sh;
        sh.language_tag = "sh";
        sh.run_command = {"/bin/sh", "{source}"};
        sh.source_filename = "main.sh";
        sh.baseline_source = "exit 0\n";
        reg.add(sh);
        return reg;
    }

    void add(RunnerSpec spec) {
        if (spec.run_command.empty())
            throw UserError("runner '" + spec.language_tag + "': run_command is empty");
        detail::validate_template(spec.run_command, spec.language_tag);
        detail::validate_template(spec.compile_command, spec.language_tag);
        specs_[spec.language_tag] = std::move(spec);
    }

    const RunnerSpec& lookup(const std::string& tag) const {
        auto it = specs_.find(tag);
        if (it == specs_.end()) throw UnknownLanguage(tag);
        return it->second;
    }

    bool has(const std::string& tag) const { return specs_.count(tag) != 0; }

    // Configuration-file overrides: {"runners": {tag: {run: [...], compile: [...], ...}}}
    void apply_overrides(const nlohmann::json& j) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            RunnerSpec spec;
            if (specs_.count(it.key())) spec = specs_[it.key()];
            spec.language_tag = it.key();
            const auto& v = it.value();
            if (v.contains("run")) spec.run_command = v.at("run").get<std::vector<std::string>>();
            if (v.contains("compile"))
                spec.compile_command = v.at("compile").get<std::vector<std::string>>();
            if (v.contains("source_filename"))
                spec.source_filename = v.at("source_filename").get<std::string>();
            if (v.contains("baseline_source"))
                spec.baseline_source = v.at("baseline_source").get<std::string>();
            add(std::move(spec));
        }
    }

  private:
    std::map<std::string, RunnerSpec> specs_;
};

// ============================================================
// Execution results
// ============================================================

enum class RunStatus { ok, compile_error, runtime_error, timeout, memory_exceeded, output_truncated };

inline std::string_view run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::ok: return "ok";
        case RunStatus::compile_error: return "compile_error";
        case RunStatus::runtime_error: return "runtime_error";
        case RunStatus::timeout: return "timeout";
        case RunStatus::memory_exceeded: return "memory_exceeded";
        case RunStatus::output_truncated: return "output_truncated";
    }
    std::abort();
}

inline std::optional<RunStatus> parse_run_status(std::string_view name) {
    for (RunStatus s : {RunStatus::ok, RunStatus::compile_error, RunStatus::runtime_error,
                        RunStatus::timeout, RunStatus::memory_exceeded,
                        RunStatus::output_truncated})
        if (run_status_name(s) == name) return s;
    return std::nullopt;
}

struct ExecutionResult {
    RunStatus status = RunStatus::ok;
    std::string stdout_data;
    std::string stderr_data;
    std::chrono::microseconds wall_time{0};
    std::chrono::microseconds cpu_time{0};
    std::int64_t peak_memory = 0;
    bool truncated = false;
    int exit_code = 0;
};

struct CompileFailure {
    std::string diagnostics;
    bool timed_out = false;
};

// ============================================================
// Temp directories and artifact handles
// ============================================================

namespace detail {

class TempDir {
  public:
    TempDir() {
        std::string tmpl = (std::filesystem::temp_directory_path() / "cjudge-XXXXXX").string();
        std::vector<char> buf(tmpl.begin(), tmpl.end());
        buf.push_back('\0');
        if (!mkdtemp(buf.data()))
            throw SandboxEnvironmentFailure("mkdtemp: " + std::string(std::strerror(errno)));
        path_ = buf.data();
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

}  // namespace detail

class ArtifactHandle {
  public:
    ArtifactHandle(std::vector<std::string> argv, std::shared_ptr<detail::TempDir> dir,
                   RunnerSpec::WorkdirPolicy policy)
        : argv_(std::move(argv)), dir_(std::move(dir)), policy_(policy) {}

    const std::vector<std::string>& argv() const { return argv_; }
    RunnerSpec::WorkdirPolicy workdir_policy() const { return policy_; }
    const std::filesystem::path& artifact_dir() const { return dir_->path(); }

  private:
    std::vector<std::string> argv_;
    std::shared_ptr<detail::TempDir> dir_;
    RunnerSpec::WorkdirPolicy policy_;
};

// ============================================================
// Core spawn/capture loop
// ============================================================

namespace detail {

struct SpawnRequest {
    std::vector<std::string> argv;
    std::filesystem::path workdir;
    std::string_view stdin_data;
    ResourceLimits limits;
};

inline void set_nonblocking(int fd) { fcntl(fd, F_SETFL, O_NONBLOCK); }

inline ExecutionResult spawn_capture(const SpawnRequest& req) {
    // A child that exits before reading its stdin would otherwise kill us
    // with SIGPIPE when we flush the remaining input.
    static std::once_flag sigpipe_once;
    std::call_once(sigpipe_once, [] { signal(SIGPIPE, SIG_IGN); });

    int in_pipe[2], out_pipe[2], err_pipe[2], exec_pipe[2];
    if (pipe(in_pipe) || pipe(out_pipe) || pipe(err_pipe) || pipe2(exec_pipe, O_CLOEXEC))
        throw SandboxEnvironmentFailure("pipe: " + std::string(std::strerror(errno)));

    // argv/env/workdir buffers prepared before fork: only async-signal-safe
    // calls are allowed in the child.
    std::vector<std::string> argv_store = req.argv;
    std::vector<char*> argv_ptrs;
    for (auto& a : argv_store) argv_ptrs.push_back(a.data());
    argv_ptrs.push_back(nullptr);

    std::vector<std::string> env_store;
    for (char** e = environ; *e; ++e) {
        std::string_view v{*e};
        if (v.substr(0, 15) == "PYTHONHASHSEED=" || v.substr(0, 24) == "PYTHONDONTWRITEBYTECODE=")
            continue;
        env_store.emplace_back(v);
    }
    env_store.emplace_back("PYTHONHASHSEED=0");
    env_store.emplace_back("PYTHONDONTWRITEBYTECODE=1");
    std::vector<char*> env_ptrs;
    for (auto& e : env_store) env_ptrs.push_back(e.data());
    env_ptrs.push_back(nullptr);

    std::string workdir = req.workdir.string();
    rlim_t cpu_sec = static_cast<rlim_t>(
        (req.limits.cpu_timeout + std::chrono::milliseconds(999)) / std::chrono::seconds(1));
    if (cpu_sec == 0) cpu_sec = 1;
    rlim_t mem_bytes = static_cast<rlim_t>(req.limits.memory_cap);

    auto start = std::chrono::steady_clock::now();
    pid_t pid = fork();
    if (pid < 0) throw SandboxEnvironmentFailure("fork: " + std::string(std::strerror(errno)));

    if (pid == 0) {
        setsid();
        dup2(in_pipe[0], 0);
        dup2(out_pipe[1], 1);
        dup2(err_pipe[1], 2);
        for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1], err_pipe[0],
                       err_pipe[1]})
            close(fd);
        if (chdir(workdir.c_str()) != 0) {
            int err = errno;
            ssize_t n = write(exec_pipe[1], &err, sizeof(err));
            (void)n;
            _exit(127);
        }
        struct rlimit rl;
        rl.rlim_cur = cpu_sec + 1;
        rl.rlim_max = cpu_sec + 2;
        setrlimit(RLIMIT_CPU, &rl);
        rl.rlim_cur = rl.rlim_max = mem_bytes;
        setrlimit(RLIMIT_AS, &rl);
        rl.rlim_cur = rl.rlim_max = 0;
        setrlimit(RLIMIT_CORE, &rl);
        execvpe(argv_ptrs[0], argv_ptrs.data(), env_ptrs.data());
        int err = errno;
        ssize_t n = write(exec_pipe[1], &err, sizeof(err));
        (void)n;
        _exit(127);
    }

    close(in_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[1]);
    close(exec_pipe[1]);

    // Detect exec failure (environment fault, not a candidate fault).
    int exec_errno = 0;
    {
        ssize_t n = read(exec_pipe[0], &exec_errno, sizeof(exec_errno));
        if (n > 0) {
            close(exec_pipe[0]);
            close(in_pipe[1]);
            close(out_pipe[0]);
            close(err_pipe[0]);
            kill(-pid, SIGKILL);
            waitpid(pid, nullptr, 0);
            throw SandboxEnvironmentFailure("cannot execute '" + req.argv[0] +
                                            "': " + std::strerror(exec_errno));
        }
        close(exec_pipe[0]);
    }

    set_nonblocking(in_pipe[1]);
    set_nonblocking(out_pipe[0]);
    set_nonblocking(err_pipe[0]);

    ExecutionResult res;
    std::size_t written = 0;
    bool stdin_open = true;
    bool out_open = true, err_open = true;
    bool wall_expired = false;
    std::size_t out_seen = 0;
    const std::size_t out_cap = static_cast<std::size_t>(req.limits.output_cap);
    auto deadline = start + req.limits.wall_timeout;

    if (req.stdin_data.empty()) {
        close(in_pipe[1]);
        stdin_open = false;
    }

    while (out_open || err_open || stdin_open) {
        struct pollfd fds[3];
        int nfds = 0;
        int out_idx = -1, err_idx = -1, in_idx = -1;
        if (out_open) {
            out_idx = nfds;
            fds[nfds++] = {out_pipe[0], POLLIN, 0};
        }
        if (err_open) {
            err_idx = nfds;
            fds[nfds++] = {err_pipe[0], POLLIN, 0};
        }
        if (stdin_open) {
            in_idx = nfds;
            fds[nfds++] = {in_pipe[1], POLLOUT, 0};
        }
        auto now = std::chrono::steady_clock::now();
        if (now >= deadline) {
            wall_expired = true;
            break;
        }
        auto remain =
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
        int timeout_ms = static_cast<int>(std::min<long long>(remain, 50));
        int rc = poll(fds, static_cast<nfds_t>(nfds), std::max(timeout_ms, 1));
        if (rc < 0) {
            if (errno == EINTR) continue;
            throw SandboxEnvironmentFailure("poll: " + std::string(std::strerror(errno)));
        }
        char buf[65536];
        if (out_idx >= 0 && (fds[out_idx].revents & (POLLIN | POLLHUP))) {
            ssize_t n = read(out_pipe[0], buf, sizeof(buf));
            if (n > 0) {
                std::size_t take = 0;
                if (out_seen < out_cap)
                    take = std::min<std::size_t>(static_cast<std::size_t>(n), out_cap - out_seen);
                res.stdout_data.append(buf, take);
                if (take < static_cast<std::size_t>(n)) res.truncated = true;
                out_seen += static_cast<std::size_t>(n);
            } else if (n == 0 || (n < 0 && errno != EAGAIN && errno != EINTR)) {
                close(out_pipe[0]);
                out_open = false;
            }
        }
        if (err_idx >= 0 && (fds[err_idx].revents & (POLLIN | POLLHUP))) {
            ssize_t n = read(err_pipe[0], buf, sizeof(buf));
            if (n > 0) {
                std::size_t room = out_cap > res.stderr_data.size()
                                       ? out_cap - res.stderr_data.size()
                                       : 0;
                std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(n), room);
                res.stderr_data.append(buf, take);
            } else if (n == 0 || (n < 0 && errno != EAGAIN && errno != EINTR)) {
                close(err_pipe[0]);
                err_open = false;
            }
        }
        if (in_idx >= 0 && (fds[in_idx].revents & (POLLOUT | POLLERR | POLLHUP))) {
            if (fds[in_idx].revents & (POLLERR | POLLHUP)) {
                close(in_pipe[1]);
                stdin_open = false;
            } else {
                ssize_t n = write(in_pipe[1], req.stdin_data.data() + written,
                                  std::min<std::size_t>(req.stdin_data.size() - written, 65536));
                if (n > 0) written += static_cast<std::size_t>(n);
                if ((n < 0 && errno != EAGAIN && errno != EINTR) ||
                    written == req.stdin_data.size()) {
                    close(in_pipe[1]);
                    stdin_open = false;
                }
            }
        }
    }

    if (wall_expired) kill(-pid, SIGKILL);

    // Reap with the wall deadline still enforced (the child may have closed
    // its streams and kept running).
    int status = 0;
    struct rusage ru {};
    for (;;) {
        pid_t r = wait4(pid, &status, WNOHANG, &ru);
        if (r == pid) break;
        if (r < 0) throw SandboxEnvironmentFailure("wait4: " + std::string(std::strerror(errno)));
        if (std::chrono::steady_clock::now() >= deadline) {
            wall_expired = true;
            kill(-pid, SIGKILL);
            if (wait4(pid, &status, 0, &ru) < 0)
                throw SandboxEnvironmentFailure("wait4: " + std::string(std::strerror(errno)));
            break;
        }
        usleep(1000);
    }
    kill(-pid, SIGKILL);  // no-orphan sweep of the whole process group

    if (stdin_open) close(in_pipe[1]);
    if (out_open) close(out_pipe[0]);
    if (err_open) close(err_pipe[0]);

    auto end = std::chrono::steady_clock::now();
    res.wall_time = std::chrono::duration_cast<std::chrono::microseconds>(end - start);
    res.cpu_time = std::chrono::microseconds(
        (static_cast<std::int64_t>(ru.ru_utime.tv_sec) + ru.ru_stime.tv_sec) * 1'000'000 +
        ru.ru_utime.tv_usec + ru.ru_stime.tv_usec);
    res.peak_memory = static_cast<std::int64_t>(ru.ru_maxrss) * 1024;

    bool signaled = WIFSIGNALED(status);
    int sig = signaled ? WTERMSIG(status) : 0;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + sig;

    bool cpu_expired = (signaled && sig == SIGXCPU) || res.cpu_time >= req.limits.cpu_timeout;
    bool failed = signaled || res.exit_code != 0;
    if (wall_expired || cpu_expired) {
        res.status = RunStatus::timeout;
    } else if (failed && res.peak_memory >= req.limits.memory_cap * 85 / 100) {
        res.status = RunStatus::memory_exceeded;
    } else if (failed) {
        res.status = RunStatus::runtime_error;
    } else if (res.truncated) {
        res.status = RunStatus::output_truncated;
    } else {
        res.status = RunStatus::ok;
    }
    return res;
}

inline std::vector<std::string> substitute(const std::vector<std::string>& tmpl,
                                           const std::string& source,
                                           const std::string& artifact) {
    std::vector<std::string> out;
    out.reserve(tmpl.size());
    for (std::string word : tmpl) {
        auto replace_all = [&word](std::string_view key, const std::string& value) {
            std::size_t pos;
            while ((pos = word.find(key)) != std::string::npos)
                word.replace(pos, key.size(), value);
        };
        replace_all("{source}", source);
        replace_all("{artifact}", artifact);
        out.push_back(std::move(word));
    }
    return out;
}

}  // namespace detail

// ============================================================
// compile / run / run_timed
// ============================================================

inline std::variant<ArtifactHandle, CompileFailure> compile(const SourceProgram& program,
                                                            const RunnerSpec& runner,
                                                            const ResourceLimits& limits) {
    auto dir = std::make_shared<detail::TempDir>();
    std::filesystem::path source_path = dir->path() / runner.source_filename;
    {
        std::ofstream out(source_path, std::ios::binary);
        out << program.source;
        if (!out) throw SandboxEnvironmentFailure("cannot write " + source_path.string());
    }
    std::filesystem::path artifact_path = dir->path() / "artifact";

    if (!runner.compile_command.empty()) {
        detail::SpawnRequest req;
        req.argv = detail::substitute(runner.compile_command, source_path.string(),
                                      artifact_path.string());
        req.workdir = dir->path();
        req.limits = limits;
        ExecutionResult cr = detail::spawn_capture(req);
        if (cr.status == RunStatus::timeout)
            return CompileFailure{"compiler timed out", true};
        if (cr.status != RunStatus::ok && cr.status != RunStatus::output_truncated) {
            std::string diag = cr.stderr_data.empty() ? cr.stdout_data : cr.stderr_data;
            if (diag.empty()) diag = "compiler exited with code " + std::to_string(cr.exit_code);
            return CompileFailure{diag, false};
        }
    }
    auto argv = detail::substitute(runner.run_command, source_path.string(),
                                   artifact_path.string());
    return ArtifactHandle{std::move(argv), std::move(dir), runner.workdir_policy};
}

inline ExecutionResult run(const ArtifactHandle& handle, std::string_view input,
                           const ResourceLimits& limits) {
    detail::SpawnRequest req;
    req.argv = handle.argv();
    req.stdin_data = input;
    req.limits = limits;
    if (handle.workdir_policy() == RunnerSpec::WorkdirPolicy::fresh_temp) {
        detail::TempDir fresh;
        req.workdir = fresh.path();
        return detail::spawn_capture(req);
    }
    req.workdir = handle.artifact_dir();
    return detail::spawn_capture(req);
}

inline std::mutex& timing_mutex() {
    static std::mutex m;
    return m;
}

// Serialized timing runs; callers take min(wall_time) across the ok results.
// Stops early when a run fails, since timings of failed runs are meaningless
// and a timing-out candidate would otherwise burn repeats * wall_timeout.
inline std::vector<ExecutionResult> run_timed(const ArtifactHandle& handle,
                                              std::string_view input,
                                              const ResourceLimits& limits, int repeats) {
    if (repeats < 1) throw UserError("run_timed: repeats must be >= 1");
    std::lock_guard<std::mutex> lock(timing_mutex());
    std::vector<ExecutionResult> results;
    results.reserve(static_cast<std::size_t>(repeats));
    for (int i = 0; i < repeats; ++i) {
        results.push_back(run(handle, input, limits));
        if (results.back().status != RunStatus::ok) break;
    }
    return results;
}

}  // namespace codejudge
