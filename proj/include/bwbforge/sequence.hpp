#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bwbforge/types.hpp"

namespace bwbforge {

/// Nonnegative integer unknowns tied by linear equations with small integer coefficients.
/// An equation with one unknown fixes it; an equation whose unknowns all share a sign and
/// whose residual is zero forces them to zero. When propagation stalls, the open system is
/// row-reduced over Q and the same two rules are applied to the reduced rows.
class LinearSolver {
public:
    using Var = int;
    struct Term {
        Var var;
        int coeff;
    };

    Var add_var(std::string name);
    Var add_known(std::string name, const BigInt& value);
    void add_equation(std::vector<Term> terms, const BigInt& rhs, std::string origin);
    /// v_a = v_b
    void add_equal(Var a, Var b, std::string origin);

    /// Runs propagation to a fixpoint. Throws InternalError on an inconsistent system.
    void solve();

    std::optional<BigInt> value(Var v) const { return values_[v]; }
    const std::string& name(Var v) const { return names_[v]; }
    std::size_t size() const { return names_.size(); }
    /// Human-readable record of the determination steps, in order.
    const std::vector<std::string>& log() const { return log_; }

private:
    struct Equation {
        std::vector<Term> terms;
        BigInt rhs;
        std::string origin;
    };
    bool assign(Var v, const BigInt& value, const std::string& why);
    void propagate();
    bool eliminate();

    std::vector<std::string> names_;
    std::vector<std::optional<BigInt>> values_;
    std::vector<Equation> equations_;
    std::vector<std::string> log_;
};

/// E1 bookkeeping for a filtered complex whose graded pieces have known cohomology.
/// Each entry carries a filtration key (lexicographic, differentials strictly lower it)
/// and a total degree; a differential raises the total degree by one.
class SpectralBook {
public:
    void add(std::vector<int> key, int total, const BigInt& dim);

    int min_total() const;
    int max_total() const;
    bool empty() const { return e_.empty(); }
    /// Total E1 dimension in degree j.
    BigInt e(int j) const;
    /// Whether some differential could connect degree j to degree j+1.
    bool may_cancel(int j) const;
    /// True when no differential can act at all: E1 = E∞.
    bool degenerate() const;

private:
    struct Range {
        std::vector<int> min_key, max_key;
    };
    std::map<int, BigInt> e_;
    std::map<int, Range> keys_;
};

/// Adds h_j (lo ≤ j ≤ hi) of the abutment to the solver together with the cancellation
/// unknowns. `bound` may supply existing variables for some h_j (index j - lo).
std::vector<LinearSolver::Var> add_spectral(LinearSolver& solver, const SpectralBook& book, int lo, int hi,
                                            const std::string& label,
                                            const std::vector<std::optional<LinearSolver::Var>>& bound = {});

/// Long exact sequence of a short exact sequence 0 → A → B → C → 0 with cohomology in
/// degrees 0..top. Each vector holds the variables for degrees 0..top.
void add_long_exact(LinearSolver& solver, const std::vector<LinearSolver::Var>& a,
                    const std::vector<LinearSolver::Var>& b, const std::vector<LinearSolver::Var>& c,
                    const std::string& label);

}  // namespace bwbforge
