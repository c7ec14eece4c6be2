#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace codejudge {

// ============================================================
// Error taxonomy
// ============================================================
// UserError   -> bad input, bad bundle, bad config     (CLI exit 1)
// EnvironmentError -> the engine itself could not run  (CLI exit 2)

struct UserError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnvironmentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bundle
struct MissingManifest : UserError {
    explicit MissingManifest(const std::string& path)
        : UserError("missing manifest in bundle directory: " + path) {}
};
struct DuplicateId : UserError {
    std::string id;
    explicit DuplicateId(std::string problem_id)
        : UserError("duplicate problem id: " + problem_id), id(std::move(problem_id)) {}
};
struct SchemaViolation : UserError {
    std::string id, field;
    SchemaViolation(std::string problem_id, std::string bad_field, const std::string& why)
        : UserError("problem '" + problem_id + "', field '" + bad_field + "': " + why),
          id(std::move(problem_id)),
          field(std::move(bad_field)) {}
};
struct UnknownComplexityLabel : UserError {
    std::string id;
    UnknownComplexityLabel(std::string problem_id, const std::string& label)
        : UserError("problem '" + problem_id + "': unknown complexity label '" + label + "'"),
          id(std::move(problem_id)) {}
};

// record store
struct StoreClosed : UserError {
    StoreClosed() : UserError("record store is closed for writing") {}
};
struct SerializationFailure : UserError {
    explicit SerializationFailure(const std::string& why)
        : UserError("record serialization failed: " + why) {}
};

// sandbox
struct UnknownLanguage : UserError {
    explicit UnknownLanguage(const std::string& tag)
        : UserError("no runner registered for language tag '" + tag + "'") {}
};
struct SandboxEnvironmentFailure : EnvironmentError {
    explicit SandboxEnvironmentFailure(const std::string& why)
        : EnvironmentError("sandbox environment failure: " + why) {}
};

// complexity
struct GeneratorFailure : UserError {
    std::int64_t size;
    GeneratorFailure(std::int64_t n, const std::string& why)
        : UserError("input generator failed at size " + std::to_string(n) + ": " + why),
          size(n) {}
};
struct InsufficientPoints : UserError {
    explicit InsufficientPoints(std::size_t got)
        : UserError("timing curve has " + std::to_string(got) +
                    " usable points; need at least 4") {}
};
struct CandidateRunFailure : UserError {
    std::int64_t size;
    CandidateRunFailure(std::int64_t n, const std::string& why)
        : UserError("candidate failed during timing at size " + std::to_string(n) + ": " + why),
          size(n) {}
};
struct ExternalJudgeProtocolError : EnvironmentError {
    explicit ExternalJudgeProtocolError(const std::string& why)
        : EnvironmentError("external judge protocol error: " + why) {}
};

// reward / grouprl / pairwise
struct MissingVerdict : UserError {
    MissingVerdict() : UserError("gate open in stage2 but no complexity verdict supplied") {}
};
struct GroupTooSmall : UserError {
    explicit GroupTooSmall(std::size_t n)
        : UserError("rollout group needs at least 2 rollouts, got " + std::to_string(n)) {}
};
struct EmptyDomainList : UserError {
    EmptyDomainList() : UserError("mixture needs at least one domain") {}
};
struct EmptyAfterTieFiltering : UserError {
    EmptyAfterTieFiltering()
        : UserError("no non-tie examples left to train the pairwise scorer") {}
};
struct DivergenceDetected : UserError {
    explicit DivergenceDetected(int epoch)
        : UserError("training loss increased 5 consecutive epochs (epoch " +
                    std::to_string(epoch) + "); lower the learning rate") {}
};
struct UnknownProblemId : UserError {
    std::string id;
    explicit UnknownProblemId(std::string problem_id)
        : UserError("rollout references unknown problem id '" + problem_id + "'"),
          id(std::move(problem_id)) {}
};

// ============================================================
// Small shared helpers
// ============================================================

inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ull) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string to_hex(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

inline std::string base64_encode(std::string_view data) {
    static const char* tbl = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    std::size_t i = 0;
    while (i + 3 <= data.size()) {
        std::uint32_t v = (static_cast<unsigned char>(data[i]) << 16) |
                          (static_cast<unsigned char>(data[i + 1]) << 8) |
                          static_cast<unsigned char>(data[i + 2]);
        out.push_back(tbl[(v >> 18) & 63]);
        out.push_back(tbl[(v >> 12) & 63]);
        out.push_back(tbl[(v >> 6) & 63]);
        out.push_back(tbl[v & 63]);
        i += 3;
    }
    std::size_t rem = data.size() - i;
    if (rem == 1) {
        std::uint32_t v = static_cast<unsigned char>(data[i]) << 16;
        out.push_back(tbl[(v >> 18) & 63]);
        out.push_back(tbl[(v >> 12) & 63]);
        out.push_back('=');
        out.push_back('=');
    } else if (rem == 2) {
        std::uint32_t v = (static_cast<unsigned char>(data[i]) << 16) |
                          (static_cast<unsigned char>(data[i + 1]) << 8);
        out.push_back(tbl[(v >> 18) & 63]);
        out.push_back(tbl[(v >> 12) & 63]);
        out.push_back(tbl[(v >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

inline std::string base64_decode(std::string_view text) {
    auto val = [](char c) -> int {
        if (c >= 'A' && c <= 'Z') return c - 'A';
        if (c >= 'a' && c <= 'z') return c - 'a' + 26;
        if (c >= '0' && c <= '9') return c - '0' + 52;
        if (c == '+') return 62;
        if (c == '/') return 63;
        return -1;
    };
    std::string out;
    out.reserve(text.size() / 4 * 3);
    std::uint32_t buf = 0;
    int bits = 0;
    for (char c : text) {
        if (c == '=') break;
        int v = val(c);
        if (v < 0) throw SerializationFailure("invalid base64 character");
        buf = (buf << 6) | static_cast<std::uint32_t>(v);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<char>((buf >> bits) & 0xff));
        }
    }
    return out;
}

inline std::vector<std::string_view> split_ws(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' ||
                                     c == '\f' || c == '\v'; };
    while (i < text.size()) {
        while (i < text.size() && is_ws(text[i])) ++i;
        std::size_t j = i;
        while (j < text.size() && !is_ws(text[j])) ++j;
        if (j > i) out.push_back(text.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::string engine_version() { return "0.1.0"; }

}  // namespace codejudge
