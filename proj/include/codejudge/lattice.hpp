#pragma once

#include <array>
#include <cstdlib>
#include <optional>
#include <string_view>

namespace codejudge {

// Growth-rate lattice, totally ordered by asymptotic growth.
enum class ComplexityClass { C1, CLOG, CN, CNLOGN, CN2, CN3, CSUPER };

inline constexpr std::array<ComplexityClass, 7> kAllClasses = {
    ComplexityClass::C1,  ComplexityClass::CLOG, ComplexityClass::CN,
    ComplexityClass::CNLOGN, ComplexityClass::CN2, ComplexityClass::CN3,
    ComplexityClass::CSUPER};

// Bit-exact wire tokens for the external-judge protocol and record store.
inline constexpr std::string_view class_token(ComplexityClass c) {
    switch (c) {
        case ComplexityClass::C1: return "O(1)";
        case ComplexityClass::CLOG: return "O(log n)";
        case ComplexityClass::CN: return "O(n)";
        case ComplexityClass::CNLOGN: return "O(n log n)";
        case ComplexityClass::CN2: return "O(n^2)";
        case ComplexityClass::CN3: return "O(n^3)";
        case ComplexityClass::CSUPER: return "SUPER";
    }
    std::abort();
}

inline std::optional<ComplexityClass> parse_class_token(std::string_view token) {
    for (ComplexityClass c : kAllClasses)
        if (class_token(c) == token) return c;
    return std::nullopt;
}

inline constexpr int class_rank(ComplexityClass c) { return static_cast<int>(c); }

struct ClassComparison {
    enum class Kind { a_better, equal, b_better };
    Kind kind;
    int steps;  // lattice distance |rank(a) - rank(b)|
};

inline constexpr ClassComparison compare_classes(ComplexityClass a, ComplexityClass b) {
    int d = class_rank(a) - class_rank(b);
    if (d < 0) return {ClassComparison::Kind::a_better, -d};
    if (d > 0) return {ClassComparison::Kind::b_better, d};
    return {ClassComparison::Kind::equal, 0};
}

// Candidate class vs the problem's reference optimal bound.
struct Relation {
    enum class Kind { better, equal, worse };
    Kind kind;
    int steps;  // 0 for equal, lattice distance otherwise
};

inline constexpr Relation relation_to_reference(ComplexityClass estimated,
                                                ComplexityClass reference) {
    ClassComparison cmp = compare_classes(estimated, reference);
    switch (cmp.kind) {
        case ClassComparison::Kind::a_better: return {Relation::Kind::better, cmp.steps};
        case ClassComparison::Kind::equal: return {Relation::Kind::equal, 0};
        case ClassComparison::Kind::b_better: return {Relation::Kind::worse, cmp.steps};
    }
    std::abort();
}

inline constexpr std::string_view relation_name(Relation::Kind k) {
    switch (k) {
        case Relation::Kind::better: return "better";
        case Relation::Kind::equal: return "equal";
        case Relation::Kind::worse: return "worse";
    }
    std::abort();
}

inline std::optional<Relation::Kind> parse_relation_name(std::string_view name) {
    if (name == "better") return Relation::Kind::better;
    if (name == "equal") return Relation::Kind::equal;
    if (name == "worse") return Relation::Kind::worse;
    return std::nullopt;
}

}  // namespace codejudge
