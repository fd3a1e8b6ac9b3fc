#include "bwbforge/sequence.hpp"

#include <algorithm>

namespace bwbforge {

LinearSolver::Var LinearSolver::add_var(std::string name)
{
    names_.push_back(std::move(name));
    values_.emplace_back();
    return static_cast<Var>(names_.size() - 1);
}

LinearSolver::Var LinearSolver::add_known(std::string name, const BigInt& value)
{
    if (value < 0)
        throw InternalError("negative dimension for " + name);
    Var v = add_var(std::move(name));
    values_[v] = value;
    return v;
}

void LinearSolver::add_equation(std::vector<Term> terms, const BigInt& rhs, std::string origin)
{
    equations_.push_back({std::move(terms), rhs, std::move(origin)});
}

void LinearSolver::add_equal(Var a, Var b, std::string origin)
{
    add_equation({{a, 1}, {b, -1}}, 0, std::move(origin));
}

bool LinearSolver::assign(Var v, const BigInt& value, const std::string& why)
{
    if (value < 0)
        throw InternalError("inconsistent sequence data: " + names_[v] + " forced to " + value.str() + " by " + why);
    if (values_[v]) {
        if (*values_[v] != value)
            throw InternalError("inconsistent sequence data: " + names_[v] + " is " + values_[v]->str() +
                                " but " + why + " gives " + value.str());
        return false;
    }
    values_[v] = value;
    log_.push_back(names_[v] + " = " + value.str() + "  [" + why + "]");
    return true;
}

void LinearSolver::solve()
{
    propagate();
    while (eliminate())
        propagate();
}

// Row-reduces the open equations over Q; a reduced row with a single unknown fixes it.
bool LinearSolver::eliminate()
{
    std::map<Var, std::size_t> column;
    std::vector<Var> vars;
    std::vector<std::pair<std::map<Var, Rational>, Rational>> open_eqs;
    for (const Equation& eq : equations_) {
        std::map<Var, Rational> open;
        Rational rhs = eq.rhs;
        for (const Term& t : eq.terms) {
            if (values_[t.var])
                rhs -= t.coeff * *values_[t.var];
            else
                open[t.var] += t.coeff;
        }
        std::erase_if(open, [](const auto& kv) { return kv.second == 0; });
        if (open.empty())
            continue;
        for (const auto& [v, c] : open)
            if (column.try_emplace(v, vars.size()).second)
                vars.push_back(v);
        open_eqs.emplace_back(std::move(open), std::move(rhs));
    }
    const std::size_t n = vars.size();
    std::vector<std::vector<Rational>> rows;
    for (const auto& [open, rhs] : open_eqs) {
        std::vector<Rational> row(n + 1);
        for (const auto& [v, c] : open)
            row[column[v]] = c;
        row[n] = rhs;
        rows.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[piv], rows[rank]);
        const Rational inv = 1 / rows[rank][c];
        for (auto& x : rows[rank])
            x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0)
                continue;
            const Rational f = rows[r][c];
            for (std::size_t k = c; k <= n; ++k)
                rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    bool changed = false;
    for (std::size_t r = 0; r < rank; ++r) {
        std::vector<std::size_t> nz;
        for (std::size_t c = 0; c < n; ++c)
            if (rows[r][c] != 0)
                nz.push_back(c);
        const Rational& rhs = rows[r][n];
        if (nz.size() == 1) {
            const Rational v = rhs / rows[r][nz[0]];
            if (denominator(v) != 1)
                throw InternalError("non-integral solution for " + names_[vars[nz[0]]]);
            changed |= assign(vars[nz[0]], numerator(v), "linear elimination");
            continue;
        }
        const bool pos = std::all_of(nz.begin(), nz.end(), [&](std::size_t c) { return rows[r][c] > 0; });
        const bool neg = std::all_of(nz.begin(), nz.end(), [&](std::size_t c) { return rows[r][c] < 0; });
        if ((pos || neg) && rhs == 0)
            for (std::size_t c : nz)
                changed |= assign(vars[c], 0, "linear elimination");
        else if ((pos && rhs < 0) || (neg && rhs > 0))
            throw InternalError("inconsistent sequence data found by elimination");
    }
    for (std::size_t r = rank; r < rows.size(); ++r)
        if (rows[r][n] != 0)
            throw InternalError("inconsistent sequence data found by elimination");
    return changed;
}

void LinearSolver::propagate()
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Equation& eq : equations_) {
            BigInt residual = eq.rhs;
            std::vector<Term> open;
            for (const Term& t : eq.terms) {
                if (values_[t.var])
                    residual -= t.coeff * *values_[t.var];
                else
                    open.push_back(t);
            }
            // merge repeated unknowns
            std::sort(open.begin(), open.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
            std::vector<Term> merged;
            for (const Term& t : open) {
                if (!merged.empty() && merged.back().var == t.var)
                    merged.back().coeff += t.coeff;
                else
                    merged.push_back(t);
            }
            merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Term& t) { return t.coeff == 0; }),
                         merged.end());
            if (merged.empty()) {
                if (residual != 0)
                    throw InternalError("inconsistent sequence data in " + eq.origin);
                continue;
            }
            if (merged.size() == 1) {
                if (residual % merged[0].coeff != 0)
                    throw InternalError("non-integral solution in " + eq.origin);
                changed |= assign(merged[0].var, residual / merged[0].coeff, eq.origin);
                continue;
            }
            const bool all_pos = std::all_of(merged.begin(), merged.end(), [](const Term& t) { return t.coeff > 0; });
            const bool all_neg = std::all_of(merged.begin(), merged.end(), [](const Term& t) { return t.coeff < 0; });
            if ((all_pos || all_neg) && residual == 0)
                for (const Term& t : merged)
                    changed |= assign(t.var, 0, eq.origin);
            else if ((all_pos && residual < 0) || (all_neg && residual > 0))
                throw InternalError("inconsistent sequence data in " + eq.origin);
        }
    }
}

void SpectralBook::add(std::vector<int> key, int total, const BigInt& dim)
{
    if (dim == 0)
        return;
    e_[total] += dim;
    auto [it, inserted] = keys_.try_emplace(total, Range{key, key});
    if (!inserted) {
        if (key < it->second.min_key)
            it->second.min_key = key;
        if (it->second.max_key < key)
            it->second.max_key = std::move(key);
    }
}

int SpectralBook::min_total() const { return e_.empty() ? 0 : e_.begin()->first; }

int SpectralBook::max_total() const { return e_.empty() ? 0 : e_.rbegin()->first; }

BigInt SpectralBook::e(int j) const
{
    auto it = e_.find(j);
    return it == e_.end() ? BigInt(0) : it->second;
}

bool SpectralBook::may_cancel(int j) const
{
    auto a = keys_.find(j);
    auto b = keys_.find(j + 1);
    if (a == keys_.end() || b == keys_.end())
        return false;
    return b->second.min_key < a->second.max_key;
}

bool SpectralBook::degenerate() const
{
    for (const auto& [j, range] : keys_)
        if (may_cancel(j))
            return false;
    return true;
}

std::vector<LinearSolver::Var> add_spectral(LinearSolver& solver, const SpectralBook& book, int lo, int hi,
                                            const std::string& label,
                                            const std::vector<std::optional<LinearSolver::Var>>& bound)
{
    const int from = std::min(lo, book.min_total());
    const int to = std::max(hi, book.max_total());
    std::vector<LinearSolver::Var> h;
    for (int j = lo; j <= hi; ++j) {
        const std::size_t idx = static_cast<std::size_t>(j - lo);
        if (idx < bound.size() && bound[idx])
            h.push_back(*bound[idx]);
        else
            h.push_back(solver.add_var(label + " h" + std::to_string(j)));
    }
    std::map<int, LinearSolver::Var> x;
    for (int j = from; j < to; ++j)
        if (book.may_cancel(j))
            x[j] = solver.add_var(label + " d" + std::to_string(j) + "->" + std::to_string(j + 1));
    std::vector<LinearSolver::Term> chi_terms;
    BigInt chi = 0;
    for (int j = from; j <= to; ++j) {
        std::vector<LinearSolver::Term> terms;
        if (j >= lo && j <= hi) {
            terms.push_back({h[j - lo], 1});
            chi_terms.push_back({h[j - lo], (j % 2 == 0) ? 1 : -1});
        }
        if (auto it = x.find(j); it != x.end())
            terms.push_back({it->second, 1});
        if (auto it = x.find(j - 1); it != x.end())
            terms.push_back({it->second, 1});
        const BigInt ej = book.e(j);
        chi += (j % 2 == 0) ? ej : BigInt(-ej);
        solver.add_equation(std::move(terms), ej, label + " degree " + std::to_string(j));
    }
    solver.add_equation(std::move(chi_terms), chi, label + " Euler characteristic");
    return h;
}

void add_long_exact(LinearSolver& solver, const std::vector<LinearSolver::Var>& a,
                    const std::vector<LinearSolver::Var>& b, const std::vector<LinearSolver::Var>& c,
                    const std::string& label)
{
    if (a.size() != b.size() || b.size() != c.size())
        throw InternalError("long exact sequence with mismatched lengths");
    std::vector<LinearSolver::Var> terms;
    for (std::size_t q = 0; q < a.size(); ++q) {
        terms.push_back(a[q]);
        terms.push_back(b[q]);
        terms.push_back(c[q]);
    }
    // ranks of the maps T_t → T_{t+1}
    std::vector<LinearSolver::Var> r;
    for (std::size_t t = 0; t + 1 < terms.size(); ++t)
        r.push_back(solver.add_var(label + " map" + std::to_string(t)));
    std::vector<LinearSolver::Term> chi;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        std::vector<LinearSolver::Term> eq{{terms[t], 1}};
        if (t > 0)
            eq.push_back({r[t - 1], -1});
        if (t + 1 < terms.size())
            eq.push_back({r[t], -1});
        solver.add_equation(std::move(eq), 0, label + " exactness");
        chi.push_back({terms[t], (t % 2 == 0) ? 1 : -1});
    }
    solver.add_equation(std::move(chi), 0, label + " alternating sum");
}

}  // namespace bwbforge
