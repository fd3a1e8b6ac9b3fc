#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "bwbforge/bwbcohom.hpp"

namespace bwbforge {

/// Raised when F has a trivial summand: its general section vanishes nowhere.
class EmptyLocus : public Error {
public:
    using Error::Error;
};

/// Zero locus Z ⊂ X of a general section of the completely reducible bundle F.
class ZeroLocus {
public:
    ZeroLocus(HomSpace x, IrrDecomp f);

    const HomSpace& space() const { return x_; }
    const IrrDecomp& bundle() const { return f_; }
    int rank() const { return rank_; }
    int dimension() const { return x_.dimension() - rank_; }

    /// Λ^p F* for p = 0..rank (computed once, shared by copies).
    const std::vector<IrrDecomp>& wedge_duals() const;
    IrrDecomp dual_bundle() const;

private:
    HomSpace x_;
    IrrDecomp f_;
    int rank_;
    struct Cache {
        std::once_flag once;
        std::vector<IrrDecomp> wedges;
    };
    std::shared_ptr<Cache> cache_;
};

/// Λ^p F*, p = 0..rank.
struct KoszulPage {
    std::vector<IrrDecomp> terms;
};
KoszulPage exterior_dual_powers(const ZeroLocus& z);

/// E1 of the Koszul resolution tensored with E: entries H^q(X, Λ^p F* ⊗ gr_l E) keyed by
/// (p, l) in total degree q − p. `contributions` (optional) receives labels per total degree.
SpectralBook koszul_book(const ZeroLocus& z, const FilteredBundle& e,
                         std::map<int, std::vector<CohomologyEntry>>* contributions = nullptr);

/// h^q(Z, O_Z), q = 0..dim Z.
CohomologyTable structure_cohomology(const ZeroLocus& z);
/// H^q(Z, E|_Z).
CohomologyTable restricted_cohomology(const ZeroLocus& z, const FilteredBundle& e);

}  // namespace bwbforge
