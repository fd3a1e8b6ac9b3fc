#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bwbforge/hodge.hpp"

namespace bwbforge {

struct Summand {
    Weight weight;
    BigInt rank;
    long long dex;
};

/// All G-dominant λ ≠ 0 with rank(E_λ) ≤ rank_cap and dex(E_λ) ≤ dex_cap, in coordinate order.
std::vector<Summand> admissible_summands(const HomSpace& x, long long rank_cap, long long dex_cap);

/// Curated summands whose general section vanishes nowhere although the numerics allow them.
struct ExceptionEntry {
    std::string space;
    Weight weight;
    std::string reason;
};
const std::vector<ExceptionEntry>& exception_list();

struct CandidatePair {
    HomSpace space;
    IrrDecomp bundle;
    int d = 0;
    /// Same tag for pairs identified by the E6 diagram automorphism.
    std::string orbit;
    std::vector<std::string> notes;
};

struct EnumerationOptions {
    bool use_exceptions = true;
    bool ratio_fast_path = true;
};

struct Enumeration {
    std::vector<CandidatePair> candidates;
    std::vector<CandidatePair> excluded;  // dropped by the exception list
    std::optional<std::string> rejected;  // whole-space rejection reason
};

/// Multisets of admissible summands with Σ rank = dim − d and Σ dex = ι.
Enumeration enumerate_candidates(const HomSpace& x, int d, const EnumerationOptions& opt = {});

/// σ: the E6 diagram automorphism on weights (1↔6, 3↔5); identity for other types.
Weight diagram_automorphism(const RootSystem& g, const Weight& w);

enum class Family { Exceptional, All };

struct ClassifiedRow {
    CandidatePair pair;
    std::optional<HodgeResult> hodge;
    bool verified_family = true;  // false for classical ambients
};

struct ClassificationReport {
    int d = 0;
    std::vector<ClassifiedRow> rows;           // full list
    std::vector<std::size_t> deduplicated;     // indices into rows, one per orbit
    std::vector<CandidatePair> excluded;
    std::vector<std::pair<std::string, std::string>> rejected;  // (space, reason)
};

struct ClassifyOptions {
    EnumerationOptions enumeration;
    Family family = Family::Exceptional;
    bool hodge = true;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Ambients searched: the 25 exceptional spaces, plus small classical ones for Family::All.
std::vector<HomSpace> search_spaces(Family family);

ClassificationReport classify(int d, const ClassifyOptions& opt = {});

}  // namespace bwbforge
