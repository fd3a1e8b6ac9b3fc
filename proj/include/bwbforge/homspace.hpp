#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bwbforge/repcalc.hpp"

namespace bwbforge {

/// Associated graded of the cotangent bundle: pieces[0] carries the labels of the deepest
/// layer g_{-m} (the innermost subbundle), pieces[m-1] those of g_{-1}.
struct GradedCotangent {
    int depth = 0;
    std::vector<IrrDecomp> pieces;
};

/// G/P_k for a maximal parabolic P_k.
class HomSpace {
public:
    HomSpace(const RootSystem& g, int k);
    /// Parses "E6/P3" (also accepts "E6/3").
    static HomSpace parse(std::string_view text);

    const RootSystem& group() const { return *g_; }
    int k() const { return k_; }
    std::string name() const;  // "E6/P3"
    const ReductiveContext& levi() const { return levi_; }
    ReductiveContext full() const { return ReductiveContext::full(*g_); }

    int dimension() const;
    int fano_index() const;
    BigInt minimal_embedding_dim() const;
    const GradedCotangent& gradation() const { return gradation_; }

    /// O(t) = t ϖ_k.
    Weight line(int t) const;
    /// k-th coordinate of λ.
    int twist_of(const Weight& lambda) const { return lambda[k_ - 1]; }

    /// Rank of E_λ (dimension of the Levi module).
    BigInt rank(const Weight& lambda) const;
    BigInt rank(const IrrDecomp& bundle) const;
    /// det E_λ = O(dex).
    long long dex(const Weight& lambda) const;
    long long dex(const IrrDecomp& bundle) const;

    friend bool operator==(const HomSpace& a, const HomSpace& b) { return a.g_ == b.g_ && a.k_ == b.k_; }

private:
    const RootSystem* g_;
    int k_;
    ReductiveContext levi_;
    GradedCotangent gradation_;
};

/// Displayed closed forms: Grassmannians (A), symplectic Grassmannians (C), spinor
/// varieties D_r/P_r. Throws Error for any other space.
Rational dex_closed_form(const HomSpace& x, const Weight& lambda);
bool has_dex_closed_form(const HomSpace& x);

/// All exceptional G/P_k up to the E6 diagram automorphism (k = 5, 6 omitted): 25 spaces.
std::vector<HomSpace> exceptional_spaces();

}  // namespace bwbforge
