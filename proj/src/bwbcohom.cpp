#include "bwbforge/bwbcohom.hpp"

#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace bwbforge {

BwbResult bwb(const HomSpace& x, const Weight& lambda)
{
    if (!x.levi().is_dominant(lambda))
        throw Error("weight " + to_string(lambda) + " is not " + x.name() + "-dominant");
    static std::shared_mutex mu;
    static std::unordered_map<std::string, BwbResult> memo;
    const std::string key = x.group().name() + to_string(lambda);
    {
        std::shared_lock lock(mu);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
    }
    const RootSystem& g = x.group();
    DominanceResult d = g.to_dominant_chamber(lambda + g.rho());
    BwbResult out;
    out.word = d.word;
    if (!d.singular) {
        out.singular = false;
        out.degree = d.word.length();
        out.weight = d.weight - g.rho();
        out.dim = weyl_dim(ReductiveContext::full(g), out.weight);
    } else {
        out.weight = d.weight;
    }
    std::unique_lock lock(mu);
    memo.emplace(key, out);
    return out;
}

void CohomologyTable::add(int q, const CohomologyEntry& e)
{
    if (q < 0 || q > top_)
        throw InternalError("cohomology outside degrees 0.." + std::to_string(top_));
    entries_[q].push_back(e);
    lower_[q] += e.dim;
    upper_[q] += e.dim;
}

void CohomologyTable::set_dim(int q, const BigInt& lower, const BigInt& upper)
{
    lower_.at(q) = lower;
    upper_.at(q) = upper;
    if (lower != upper)
        status_ = Status::Bounds;
}

BigInt CohomologyTable::dim(int q) const
{
    if (q < 0 || q > top_)
        return 0;
    if (lower_[q] != upper_[q])
        throw Error("cohomology in degree " + std::to_string(q) + " is only bounded");
    return lower_[q];
}

std::vector<BigInt> CohomologyTable::dims() const
{
    std::vector<BigInt> v;
    for (int q = 0; q <= top_; ++q)
        v.push_back(dim(q));
    return v;
}

BigInt CohomologyTable::euler() const
{
    BigInt s = 0;
    for (int q = 0; q <= top_; ++q)
        s += (q % 2 == 0) ? dim(q) : BigInt(-dim(q));
    return s;
}

CohomologyTable bundle_cohomology(const HomSpace& x, const IrrDecomp& bundle)
{
    CohomologyTable t(x.dimension());
    for (const auto& [w, m] : bundle.terms()) {
        BwbResult r = bwb(x, w);
        if (!r.singular)
            t.add(r.degree, {r.weight, m, m * r.dim});
    }
    return t;
}

FilteredBundle FilteredBundle::tensor(const ReductiveContext& levi, const IrrDecomp& c) const
{
    FilteredBundle out;
    for (const auto& g : gradeds)
        out.gradeds.push_back(tensor_decompose(levi, g, c));
    return out;
}

FilteredBundle FilteredBundle::twist(const HomSpace& x, int t) const
{
    FilteredBundle out;
    for (const auto& g : gradeds)
        out.gradeds.push_back(g.shifted(x.line(t)));
    return out;
}

BigInt FilteredBundle::rank(const HomSpace& x) const
{
    BigInt r = 0;
    for (const auto& g : gradeds)
        r += x.rank(g);
    return r;
}

std::set<int> reg_ind(const HomSpace& x, const FilteredBundle& b)
{
    std::set<int> out;
    for (const auto& g : b.gradeds)
        for (const auto& [w, m] : g.terms()) {
            BwbResult r = bwb(x, w);
            if (!r.singular)
                out.insert(r.degree);
        }
    return out;
}

CohomologyTable resolve_book(const SpectralBook& book, int top,
                             const std::map<int, std::vector<CohomologyEntry>>& contributions)
{
    CohomologyTable t(top);
    LinearSolver solver;
    auto h = add_spectral(solver, book, 0, top, "H");
    solver.solve();
    bool exact = true;
    for (int q = 0; q <= top; ++q) {
        if (auto v = solver.value(h[q])) {
            t.set_dim(q, *v, *v);
        } else {
            exact = false;
            t.set_dim(q, 0, book.e(q));
        }
    }
    if (!exact)
        t.set_bounds();
    for (const auto& [q, es] : contributions)
        if (q >= 0 && q <= top)
            for (const auto& e : es)
                t.note(q, e);
    return t;
}

CohomologyTable filtered_cohomology(const HomSpace& x, const FilteredBundle& b)
{
    SpectralBook book;
    std::map<int, std::vector<CohomologyEntry>> contributions;
    for (std::size_t level = 0; level < b.gradeds.size(); ++level)
        for (const auto& [w, m] : b.gradeds[level].terms()) {
            BwbResult r = bwb(x, w);
            if (r.singular)
                continue;
            book.add({static_cast<int>(level)}, r.degree, m * r.dim);
            contributions[r.degree].push_back({r.weight, m, m * r.dim});
        }
    return resolve_book(book, x.dimension(), contributions);
}

FilteredBundle cotangent_bundle(const HomSpace& x) { return {x.gradation().pieces}; }

FilteredBundle cotangent_square(const HomSpace& x)
{
    const auto& pieces = x.gradation().pieces;
    const int m = x.gradation().depth;
    // pieces[i] has depth m - i
    std::map<int, IrrDecomp, std::greater<int>> by_depth;
    for (int i = 0; i < m; ++i) {
        const int di = m - i;
        if (x.rank(pieces[i]) >= 2)
            by_depth[2 * di] += exterior_power(x.levi(), pieces[i], 2);
        for (int j = i + 1; j < m; ++j)
            by_depth[di + (m - j)] += tensor_decompose(x.levi(), pieces[i], pieces[j]);
    }
    FilteredBundle out;
    for (auto& [depth, rep] : by_depth)
        if (!rep.empty())
            out.gradeds.push_back(std::move(rep));
    return out;
}

}  // namespace bwbforge
