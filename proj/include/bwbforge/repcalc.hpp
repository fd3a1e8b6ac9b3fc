#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bwbforge/rootdata.hpp"
#include "bwbforge/types.hpp"

namespace bwbforge {

/// The full group G (every simple index kept) or a Levi factor of G: the subgroup
/// generated by the torus and the root subgroups of `levi` simple roots.
class ReductiveContext {
public:
    ReductiveContext(const RootSystem& g, std::uint32_t levi_mask);

    static ReductiveContext full(const RootSystem& g);
    /// Levi of the maximal parabolic P_k (k is 1-based).
    static ReductiveContext maximal_levi(const RootSystem& g, int k);

    const RootSystem& ambient() const { return *g_; }
    std::uint32_t levi_mask() const { return mask_; }
    bool in_levi(int i) const { return (mask_ >> (i - 1)) & 1u; }  // 1-based
    bool is_full() const;
    /// Omitted simple indices (1-based); exactly {k} for a maximal Levi.
    std::vector<int> omitted() const;

    const std::vector<Root>& positive_roots() const { return roots_; }
    bool is_dominant(const Weight& w) const;
    /// Weight with zero Levi coordinates: a one-dimensional representation.
    bool is_central(const Weight& w) const;
    /// Splits w into its Levi-semisimple part (non-Levi coordinates zeroed) and the central rest.
    std::pair<Weight, Weight> split_center(const Weight& w) const;

    /// Linear functional that is 2 on every Levi simple root; used to order weights.
    long long height(const Weight& w) const;

    /// Climbs λ + ρ with Levi reflections only. Returns nullopt-like singular flag via `sign == 0`.
    struct Straightened {
        int sign = 0;  // 0: singular, ±1 otherwise
        Weight weight; // dominant result minus ρ
    };
    Straightened straighten(const Weight& w) const;

    std::string key() const;
    friend bool operator==(const ReductiveContext& a, const ReductiveContext& b)
    {
        return a.g_ == b.g_ && a.mask_ == b.mask_;
    }

private:
    const RootSystem* g_;
    std::uint32_t mask_;
    std::vector<Root> roots_;
    std::vector<long long> height_coeffs_;
};

/// Formal character: weight → positive multiplicity.
class Character {
public:
    using Map = std::unordered_map<Weight, BigInt, CoordsHash>;

    void add(const Weight& w, const BigInt& m);
    BigInt multiplicity(const Weight& w) const;
    const Map& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    BigInt total() const;
    /// Deterministically ordered copy of the terms.
    std::vector<std::pair<Weight, BigInt>> sorted() const;

    Character shifted(const Weight& by) const;
    /// Adams operation ψ^m: every weight scaled by m.
    Character adams(int m) const;
    Character scaled(const BigInt& factor) const;
    Character& operator+=(const Character& o);
    Character& operator-=(const Character& o);

    friend Character convolve(const Character& a, const Character& b);
    friend bool operator==(const Character& a, const Character& b) { return a.terms_ == b.terms_; }

private:
    Map terms_;
};

/// Formal sum of irreducibles: highest weight (context-dominant) → multiplicity.
class IrrDecomp {
public:
    using Map = std::map<Weight, BigInt>;

    IrrDecomp() = default;
    static IrrDecomp single(const Weight& w, const BigInt& m = 1);

    void add(const Weight& w, const BigInt& m);
    const Map& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    BigInt multiplicity(const Weight& w) const;

    IrrDecomp shifted(const Weight& by) const;
    IrrDecomp scaled(const BigInt& factor) const;
    IrrDecomp& operator+=(const IrrDecomp& o);

    friend bool operator==(const IrrDecomp&, const IrrDecomp&) = default;

private:
    Map terms_;
};

// All operations below throw Error when λ is not context-dominant.

/// Weyl dimension formula over the context's positive roots.
BigInt weyl_dim(const ReductiveContext& ctx, const Weight& lambda);
/// Σ multiplicity × weyl_dim.
BigInt total_dim(const ReductiveContext& ctx, const IrrDecomp& rep);

/// Freudenthal multiplicities of V(λ); memoized per (context, λ modulo center).
std::shared_ptr<const Character> weight_multiplicities(const ReductiveContext& ctx, const Weight& lambda);
Character character_of(const ReductiveContext& ctx, const IrrDecomp& rep);

/// Highest weight of V(λ)^*.
Weight dual_highest_weight(const ReductiveContext& ctx, const Weight& lambda);
IrrDecomp dual(const ReductiveContext& ctx, const IrrDecomp& rep);

/// Greedy highest-weight peeling. Throws InternalError if the character is not a genuine
/// nonnegative combination of irreducibles.
IrrDecomp decompose(const ReductiveContext& ctx, Character chi);
/// Alternating straightening of χ·e^ρ (independent route used for cross-checks).
IrrDecomp decompose_by_straightening(const ReductiveContext& ctx, const Character& chi);

/// V(a) ⊗ V(b) via Brauer–Klimyk over the weights of the smaller factor; memoized.
IrrDecomp tensor_decompose(const ReductiveContext& ctx, const IrrDecomp& a, const IrrDecomp& b);

/// Λ^k and S^k of a representation (Adams operations + Newton identities on irreducible
/// summands, multiplicative expansion over direct sums). k must lie in [0, rank].
IrrDecomp exterior_power(const ReductiveContext& ctx, const IrrDecomp& rep, int k);
IrrDecomp symmetric_power(const ReductiveContext& ctx, const IrrDecomp& rep, int k);
/// Λ^0..Λ^max_k at once (max_k clipped to the rank).
std::vector<IrrDecomp> exterior_powers(const ReductiveContext& ctx, const IrrDecomp& rep, int max_k);

/// Σ mult(w)·w over the character of V(λ); ctx must omit exactly one simple index.
Weight sum_of_weights(const ReductiveContext& ctx, const Weight& lambda);

/// Optional persistent backing store for plethysm tables (installed by the CLI).
class PlethysmStore {
public:
    virtual ~PlethysmStore() = default;
    virtual bool load(const std::string& key, IrrDecomp& out) = 0;
    virtual void save(const std::string& key, const IrrDecomp& value) = 0;
};
void set_plethysm_store(std::shared_ptr<PlethysmStore> store);

/// Serialization used by persistent caches: "w1 w2 ... : mult;" lines.
std::string serialize(const IrrDecomp& rep);
IrrDecomp deserialize_irrdecomp(const std::string& text);

}  // namespace bwbforge
