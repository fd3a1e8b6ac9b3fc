#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "bwbforge/types.hpp"

namespace bwbforge {

/// Cartan type of a simple root system, Bourbaki labeling.
struct RootSystemSpec {
    char family = 'A';
    int rank = 1;

    /// Throws Error unless the rank is admissible for the family.
    void validate() const;
    std::string name() const;  // "E6"

    /// Parses "E6", "g2", "A5".
    static RootSystemSpec parse(std::string_view text);

    friend bool operator==(const RootSystemSpec&, const RootSystemSpec&) = default;
    friend auto operator<=>(const RootSystemSpec&, const RootSystemSpec&) = default;
};

/// Reduced word of simple reflections, indices 1-based, applied left to right.
struct WeylWord {
    std::vector<int> word;
    int length() const { return static_cast<int>(word.size()); }
};

/// Outcome of climbing a weight into the dominant chamber.
/// For a singular weight, `weight` is the representative at which a zero coordinate
/// (a wall) was detected and `word` is the prefix applied so far.
struct DominanceResult {
    bool singular = false;
    Weight weight;
    WeylWord word;
};

/// Immutable root datum of a simple Lie algebra. Weights live in the fundamental-weight
/// basis, roots in the simple-root basis; column j of the Cartan matrix is α_j written
/// in fundamental weights, i.e. cartan(i, j) = <α_j, α_i^∨>.
class RootSystem {
public:
    explicit RootSystem(RootSystemSpec spec);

    /// Shared, lazily built instance per spec.
    static const RootSystem& get(RootSystemSpec spec);
    static const RootSystem& get(std::string_view name) { return get(RootSystemSpec::parse(name)); }

    const RootSystemSpec& spec() const { return spec_; }
    int rank() const { return spec_.rank; }
    std::string name() const { return spec_.name(); }

    const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }
    int cartan(int i, int j) const { return cartan_[i][j]; }  // 0-based

    /// α_j (1-based) in fundamental-weight coordinates.
    const Weight& simple_root(int j) const { return simple_weights_[j - 1]; }
    Weight to_weight(const Root& r) const;

    /// Positive roots ordered by height, then coordinates.
    const std::vector<Root>& positive_roots() const { return positive_; }
    const std::vector<Weight>& positive_root_weights() const { return positive_weights_; }
    bool is_root(const Root& r) const { return all_roots_.count(r) != 0; }
    Root highest_root() const { return positive_.back(); }

    Weight rho() const;
    Weight fundamental(int i) const;  // ϖ_i, 1-based
    Weight zero() const { return Weight(rank()); }

    /// Integer scale s with (α_i, α_j) = scaled_form(i, j) / s; long roots have squared length 2.
    int form_scale() const { return scale_; }
    int scaled_form(int i, int j) const { return form_[i][j]; }
    /// s·(α_i, α_i)/2, a positive integer.
    int scaled_half_length(int i) const { return half_[i]; }

    /// s·(w, α) for a weight w and a root α given in simple-root coordinates.
    long long scaled_pairing(const Weight& w, const Root& alpha) const;
    /// <w, α^∨> for a root α; exact integer.
    long long coroot_pairing(const Weight& w, const Root& alpha) const;

    /// W-invariant form, long roots of squared length 2.
    Rational inner_product(const Weight& a, const Weight& b) const;
    /// Simple-root coordinates of a weight (rational in general).
    std::vector<Rational> to_root_coords(const Weight& w) const;

    Weight reflect(Weight w, int i) const;  // s_i, 1-based

    /// Applies s_i at the smallest index with a negative coordinate until dominant.
    /// Reports Singular as soon as any coordinate is zero.
    DominanceResult to_dominant_chamber(const Weight& w) const;

private:
    RootSystemSpec spec_;
    std::vector<std::vector<int>> cartan_;
    std::vector<std::vector<int>> form_;
    std::vector<int> half_;
    int scale_ = 1;
    std::vector<Weight> simple_weights_;
    std::vector<Root> positive_;
    std::vector<Weight> positive_weights_;
    std::unordered_set<Root, CoordsHash> all_roots_;
    std::vector<std::vector<Rational>> cartan_inverse_;
};

/// Parses "[0,1,0,0,0,0]" into a weight of the given rank.
Weight parse_weight(std::string_view text, int rank);
/// Formats the CLI weight syntax "E6: [0,1,0,0,0,0]".
std::string format_weight(const RootSystem& g, const Weight& w);
/// Formats the CLI root syntax "E6 root: (1,0,1,2,1,0)".
std::string format_root(const RootSystem& g, const Root& r);

}  // namespace bwbforge
