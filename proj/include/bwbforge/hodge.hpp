#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bwbforge/koszul.hpp"

namespace bwbforge {

class HodgeDiamond {
public:
    enum class Flag { Computed, SymmetryForced, Ambiguous };

    explicit HodgeDiamond(int d = 0);

    int dimension() const { return d_; }
    std::optional<BigInt> at(int p, int q) const { return h_.at(p).at(q); }
    Flag flag(int p, int q) const { return flags_.at(p).at(q); }
    void set(int p, int q, std::optional<BigInt> v, Flag f);
    bool complete() const;

private:
    int d_;
    std::vector<std::vector<std::optional<BigInt>>> h_;
    std::vector<std::vector<Flag>> flags_;
};

/// Sequences, per-term tables and the determination trail of one run.
struct ChaseReport {
    struct Term {
        std::string label;
        CohomologyTable table;
    };
    std::vector<std::string> sequences;
    std::vector<Term> terms;
    std::vector<std::string> steps;
    std::vector<std::string> ambiguities;
};

struct HodgeResult {
    HodgeDiamond diamond;
    ChaseReport report;
    std::optional<BigInt> euler;
    /// d = 4 with h^{0,2} = 1; unset when h^{0,2} is not determined.
    std::optional<bool> hyperkahler;
};

/// Whole pipeline: structure sheaf, conormal sequence and, for d = 4, its second exterior power,
/// solved jointly with Hodge symmetry.
HodgeResult assemble(const ZeroLocus& z);

std::vector<std::optional<BigInt>> h0_row(const ZeroLocus& z);
std::vector<std::optional<BigInt>> h1_row(const ZeroLocus& z);
/// Requires d = 4.
std::optional<BigInt> h22(const ZeroLocus& z);

/// Σ (−1)^{p+q} h^{p,q}; unset if any cell is unknown.
std::optional<BigInt> euler_characteristic(const HodgeDiamond& diamond);

}  // namespace bwbforge
