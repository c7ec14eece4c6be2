#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "codejudge/common.hpp"
#include "codejudge/lattice.hpp"

namespace codejudge {

// ============================================================
// Domain types
// ============================================================

enum class CompareMode { exact, trimmed, token };

inline std::string_view compare_mode_name(CompareMode m) {
    switch (m) {
        case CompareMode::exact: return "exact";
        case CompareMode::trimmed: return "trimmed";
        case CompareMode::token: return "token";
    }
    std::abort();
}

inline std::optional<CompareMode> parse_compare_mode(std::string_view name) {
    if (name == "exact") return CompareMode::exact;
    if (name == "trimmed") return CompareMode::trimmed;
    if (name == "token") return CompareMode::token;
    return std::nullopt;
}

struct TestCase {
    std::string input;
    std::string expected_output;
    CompareMode compare_mode = CompareMode::trimmed;
};

struct SourceProgram {
    std::string language_tag;
    std::string source;
};

struct ResourceLimits {
    std::chrono::milliseconds wall_timeout{10'000};
    std::chrono::milliseconds cpu_timeout{10'000};
    std::int64_t memory_cap = 512ll * 1024 * 1024;
    std::int64_t output_cap = 8ll * 1024 * 1024;
};

struct Problem {
    std::string id;
    std::string statement;
    std::vector<TestCase> tests;
    SourceProgram reference_solution;
    ComplexityClass optimal_complexity = ComplexityClass::CN;
    SourceProgram input_generator;
    ResourceLimits limits;
};

struct Rollout {
    std::string problem_id;
    int rollout_index = 0;
    std::string raw_response;
    std::optional<SourceProgram> extracted_program;
};

// ============================================================
// Code extraction: last fenced block wins, hinted languages first
// ============================================================

namespace detail {

struct FencedBlock {
    std::string info;  // first word after the opening fence, lowercased
    std::string body;
};

inline std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline std::string normalize_language(std::string_view tag) {
    std::string t = lowercase(tag);
    if (t == "python" || t == "py" || t == "python3") return "python3";
    if (t == "c++" || t == "cpp" || t == "cc" || t == "cxx") return "cpp";
    if (t == "shell" || t == "bash" || t == "sh") return "sh";
    return t;
}

inline std::vector<FencedBlock> fenced_blocks(std::string_view text) {
    std::vector<FencedBlock> blocks;
    std::istringstream in{std::string(text)};
    std::string line;
    bool open = false;
    FencedBlock cur;
    while (std::getline(in, line)) {
        std::string_view v = line;
        while (!v.empty() && (v.back() == '\r')) v.remove_suffix(1);
        std::string_view stripped = v;
        while (!stripped.empty() && (stripped.front() == ' ' || stripped.front() == '\t'))
            stripped.remove_prefix(1);
        if (stripped.substr(0, 3) == "```") {
            if (!open) {
                open = true;
                cur = {};
                auto words = split_ws(stripped.substr(3));
                if (!words.empty()) cur.info = lowercase(words.front());
            } else {
                open = false;
                blocks.push_back(std::move(cur));
                cur = {};
            }
            continue;
        }
        if (open) {
            cur.body += std::string(v);
            cur.body += '\n';
        }
    }
    return blocks;  // an unterminated fence is ignored
}

inline bool blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace detail

inline std::optional<SourceProgram> extract_program(
    std::string_view raw_response, const std::vector<std::string>& language_hints) {
    auto blocks = detail::fenced_blocks(raw_response);
    if (blocks.empty()) return std::nullopt;

    std::vector<std::string> hints;
    hints.reserve(language_hints.size());
    for (const auto& h : language_hints) hints.push_back(detail::normalize_language(h));

    const detail::FencedBlock* chosen = nullptr;
    for (const auto& b : blocks) {
        std::string lang = detail::normalize_language(b.info);
        if (std::find(hints.begin(), hints.end(), lang) != hints.end()) chosen = &b;
    }
    if (!chosen) chosen = &blocks.back();
    if (chosen->body.empty() || detail::blank(chosen->body)) return std::nullopt;

    std::string tag = detail::normalize_language(chosen->info);
    if (tag.empty()) tag = hints.empty() ? std::string("python3") : hints.front();
    return SourceProgram{tag, chosen->body};
}

// ============================================================
// Bundle loading
// ============================================================
// Layout: <bundle>/manifest.json lists problem directories; each directory
// holds problem.json plus the files it references.

namespace detail {

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw UserError("cannot read file: " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline nlohmann::json parse_json_file(const std::filesystem::path& p) {
    nlohmann::json j = nlohmann::json::parse(read_file(p), nullptr, false);
    if (j.is_discarded()) throw UserError("malformed JSON: " + p.string());
    return j;
}

inline SourceProgram load_program_ref(const nlohmann::json& j, const std::filesystem::path& dir,
                                      const std::string& id, const std::string& field) {
    if (!j.is_object() || !j.contains("language") || !j.contains("path"))
        throw SchemaViolation(id, field, "expected {language, path}");
    SourceProgram p;
    p.language_tag = j.at("language").get<std::string>();
    std::filesystem::path src = dir / j.at("path").get<std::string>();
    if (!std::filesystem::exists(src))
        throw SchemaViolation(id, field, "file not found: " + src.string());
    p.source = read_file(src);
    if (p.source.empty()) throw SchemaViolation(id, field, "source file is empty");
    return p;
}

inline ResourceLimits load_limits(const nlohmann::json& j, const std::string& id,
                                  const ResourceLimits& defaults) {
    ResourceLimits lim = defaults;
    if (j.contains("wall_timeout_ms"))
        lim.wall_timeout = std::chrono::milliseconds(j.at("wall_timeout_ms").get<std::int64_t>());
    if (j.contains("cpu_timeout_ms"))
        lim.cpu_timeout = std::chrono::milliseconds(j.at("cpu_timeout_ms").get<std::int64_t>());
    if (j.contains("memory_cap_bytes")) lim.memory_cap = j.at("memory_cap_bytes").get<std::int64_t>();
    if (j.contains("output_cap_bytes")) lim.output_cap = j.at("output_cap_bytes").get<std::int64_t>();
    if (lim.wall_timeout.count() <= 0 || lim.cpu_timeout.count() <= 0 || lim.memory_cap <= 0 ||
        lim.output_cap <= 0)
        throw SchemaViolation(id, "limits", "all limits must be strictly positive");
    if (lim.cpu_timeout > lim.wall_timeout)
        throw SchemaViolation(id, "limits", "cpu_timeout must not exceed wall_timeout");
    return lim;
}

inline Problem load_problem(const std::filesystem::path& dir, const ResourceLimits& defaults) {
    std::filesystem::path meta = dir / "problem.json";
    if (!std::filesystem::exists(meta))
        throw SchemaViolation(dir.filename().string(), "problem.json", "missing");
    nlohmann::json j = parse_json_file(meta);

    Problem p;
    p.id = j.value("id", std::string{});
    if (p.id.empty()) throw SchemaViolation(dir.filename().string(), "id", "missing or empty");
    if (!j.contains("statement") || !j.at("statement").is_string())
        throw SchemaViolation(p.id, "statement", "missing");
    p.statement = j.at("statement").get<std::string>();

    std::string label = j.value("optimal_complexity", std::string{});
    auto cls = parse_class_token(label);
    if (!cls) throw UnknownComplexityLabel(p.id, label);
    p.optimal_complexity = *cls;

    if (!j.contains("reference_solution"))
        throw SchemaViolation(p.id, "reference_solution", "missing");
    p.reference_solution = load_program_ref(j.at("reference_solution"), dir, p.id,
                                            "reference_solution");
    if (!j.contains("input_generator"))
        throw SchemaViolation(p.id, "input_generator", "missing");
    p.input_generator = load_program_ref(j.at("input_generator"), dir, p.id, "input_generator");

    p.limits = load_limits(j.value("limits", nlohmann::json::object()), p.id, defaults);

    CompareMode mode = CompareMode::trimmed;
    if (j.contains("compare_mode")) {
        auto m = parse_compare_mode(j.at("compare_mode").get<std::string>());
        if (!m) throw SchemaViolation(p.id, "compare_mode", "unknown mode");
        mode = *m;
    }

    if (!j.contains("tests") || !j.at("tests").is_array() || j.at("tests").empty())
        throw SchemaViolation(p.id, "tests", "must be a nonempty array");
    for (const auto& tj : j.at("tests")) {
        TestCase tc;
        tc.compare_mode = mode;
        if (tj.contains("input"))
            tc.input = tj.at("input").get<std::string>();
        else if (tj.contains("input_file"))
            tc.input = read_file(dir / tj.at("input_file").get<std::string>());
        else
            throw SchemaViolation(p.id, "tests", "test needs input or input_file");
        if (tj.contains("output"))
            tc.expected_output = tj.at("output").get<std::string>();
        else if (tj.contains("output_file"))
            tc.expected_output = read_file(dir / tj.at("output_file").get<std::string>());
        else
            throw SchemaViolation(p.id, "tests", "test needs output or output_file");
        if (tc.expected_output.empty() && tc.compare_mode != CompareMode::exact)
            throw SchemaViolation(p.id, "tests",
                                  "empty expected output allowed only under exact compare");
        p.tests.push_back(std::move(tc));
    }
    return p;
}

}  // namespace detail

inline std::vector<Problem> load_bundle(const std::filesystem::path& path,
                                        const ResourceLimits& defaults = {}) {
    std::filesystem::path manifest = path / "manifest.json";
    if (!std::filesystem::exists(manifest)) throw MissingManifest(path.string());
    nlohmann::json mj = detail::parse_json_file(manifest);
    if (!mj.contains("problems") || !mj.at("problems").is_array())
        throw UserError("manifest.json must contain a 'problems' array");

    std::vector<Problem> problems;
    std::set<std::string> seen;
    for (const auto& entry : mj.at("problems")) {
        Problem p = detail::load_problem(path / entry.get<std::string>(), defaults);
        if (!seen.insert(p.id).second) throw DuplicateId(p.id);
        problems.push_back(std::move(p));
    }
    std::sort(problems.begin(), problems.end(),
              [](const Problem& a, const Problem& b) { return a.id < b.id; });
    return problems;
}

// Per-problem diagnostics for `ingest`; empty result means the bundle is valid.
inline std::vector<std::string> validate_bundle(const std::filesystem::path& path,
                                                const ResourceLimits& defaults = {}) {
    std::vector<std::string> issues;
    std::filesystem::path manifest = path / "manifest.json";
    if (!std::filesystem::exists(manifest)) {
        issues.push_back("MissingManifest: " + path.string());
        return issues;
    }
    nlohmann::json mj;
    try {
        mj = detail::parse_json_file(manifest);
    } catch (const UserError& e) {
        issues.push_back(e.what());
        return issues;
    }
    if (!mj.contains("problems") || !mj.at("problems").is_array()) {
        issues.push_back("manifest.json must contain a 'problems' array");
        return issues;
    }
    std::set<std::string> seen;
    for (const auto& entry : mj.at("problems")) {
        try {
            Problem p = detail::load_problem(path / entry.get<std::string>(), defaults);
            if (!seen.insert(p.id).second) throw DuplicateId(p.id);
        } catch (const UserError& e) {
            issues.push_back(e.what());
        }
    }
    return issues;
}

}  // namespace codejudge
