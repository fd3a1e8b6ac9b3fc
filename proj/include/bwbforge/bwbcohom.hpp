#pragma once

#include <map>
#include <set>
#include <vector>

#include "bwbforge/homspace.hpp"
#include "bwbforge/sequence.hpp"

namespace bwbforge {

/// Borel–Weil–Bott for one irreducible E_λ: H^degree = V_G(weight)^*, all else zero.
struct BwbResult {
    bool singular = true;
    int degree = 0;
    Weight weight;  // w(λ+ρ)−ρ
    BigInt dim = 0;
    WeylWord word;
};

BwbResult bwb(const HomSpace& x, const Weight& lambda);

struct CohomologyEntry {
    Weight weight;
    BigInt multiplicity;
    BigInt dim;  // multiplicity × weyl_dim
};

/// H^q by degree. Exact tables carry per-degree dimensions; otherwise lower/upper bounds
/// bracket each degree and `entries` lists the E1 contributions that could not be resolved.
class CohomologyTable {
public:
    enum class Status { Exact, Bounds };

    explicit CohomologyTable(int top = 0) : top_(top), lower_(top + 1), upper_(top + 1) {}

    int top() const { return top_; }
    Status status() const { return status_; }
    bool exact() const { return status_ == Status::Exact; }
    void set_bounds() { status_ = Status::Bounds; }

    /// Adds a contribution to degree q and raises both bounds by its dimension.
    void add(int q, const CohomologyEntry& e);
    /// Records an E1 contribution without touching the bounds.
    void note(int q, const CohomologyEntry& e) { entries_[q].push_back(e); }
    void set_dim(int q, const BigInt& lower, const BigInt& upper);

    const std::map<int, std::vector<CohomologyEntry>>& entries() const { return entries_; }
    BigInt dim(int q) const;  // exact only
    const BigInt& lower(int q) const { return lower_.at(q); }
    const BigInt& upper(int q) const { return upper_.at(q); }
    std::vector<BigInt> dims() const;
    BigInt euler() const;

private:
    int top_;
    Status status_ = Status::Exact;
    std::map<int, std::vector<CohomologyEntry>> entries_;
    std::vector<BigInt> lower_, upper_;
};

/// Direct sum of irreducibles: union of BWB tables.
CohomologyTable bundle_cohomology(const HomSpace& x, const IrrDecomp& bundle);

/// Bundle with a P-stable filtration; gradeds run from the innermost subbundle to the
/// final quotient.
struct FilteredBundle {
    std::vector<IrrDecomp> gradeds;

    static FilteredBundle of(const IrrDecomp& bundle) { return {{bundle}}; }
    /// gr(B ⊗ C) = gr(B) ⊗ C for completely reducible C.
    FilteredBundle tensor(const ReductiveContext& levi, const IrrDecomp& c) const;
    FilteredBundle twist(const HomSpace& x, int t) const;
    BigInt rank(const HomSpace& x) const;
};

std::set<int> reg_ind(const HomSpace& x, const FilteredBundle& b);

/// Cohomology through the filtration's long exact sequences; exact when the degree
/// bookkeeping rules out every connecting map, bounds otherwise.
CohomologyTable filtered_cohomology(const HomSpace& x, const FilteredBundle& b);

/// Ω_X with gradeds E_{hw(g_{-m})}, ..., E_{hw(g_{-1})}.
FilteredBundle cotangent_bundle(const HomSpace& x);
/// Λ²Ω_X graded by total depth: Λ²gr_i and gr_i ⊗ gr_j, deeper levels first.
FilteredBundle cotangent_square(const HomSpace& x);

/// Builds a CohomologyTable for degrees 0..top out of a spectral book by propagation.
CohomologyTable resolve_book(const SpectralBook& book, int top,
                             const std::map<int, std::vector<CohomologyEntry>>& contributions);

}  // namespace bwbforge
