#include "bwbforge/koszul.hpp"

namespace bwbforge {

ZeroLocus::ZeroLocus(HomSpace x, IrrDecomp f) : x_(std::move(x)), f_(std::move(f)), cache_(std::make_shared<Cache>())
{
    if (f_.empty())
        throw Error("the bundle is empty");
    const RootSystem& g = x_.group();
    for (const auto& [w, m] : f_.terms()) {
        if (w.size() != g.rank())
            throw Error("weight " + to_string(w) + " has wrong rank for " + g.name());
        if (!x_.levi().is_dominant(w))
            throw Error("weight " + to_string(w) + " is not " + x_.name() + "-dominant");
        if (w.is_zero())
            throw EmptyLocus("F has a trivial summand; a general section vanishes nowhere");
        if (m <= 0)
            throw Error("multiplicities must be positive");
    }
    const BigInt r = x_.rank(f_);
    if (r > x_.dimension())
        throw Error("rank " + r.str() + " exceeds dim " + std::to_string(x_.dimension()) + " of " + x_.name());
    rank_ = static_cast<int>(r);
}

IrrDecomp ZeroLocus::dual_bundle() const { return dual(x_.levi(), f_); }

const std::vector<IrrDecomp>& ZeroLocus::wedge_duals() const
{
    std::call_once(cache_->once, [&] { cache_->wedges = exterior_powers(x_.levi(), dual_bundle(), rank_); });
    return cache_->wedges;
}

KoszulPage exterior_dual_powers(const ZeroLocus& z) { return {z.wedge_duals()}; }

SpectralBook koszul_book(const ZeroLocus& z, const FilteredBundle& e,
                         std::map<int, std::vector<CohomologyEntry>>* contributions)
{
    const HomSpace& x = z.space();
    const auto& wedges = z.wedge_duals();
    SpectralBook book;
    for (int p = 0; p < static_cast<int>(wedges.size()); ++p) {
        for (std::size_t l = 0; l < e.gradeds.size(); ++l) {
            const IrrDecomp term = tensor_decompose(x.levi(), wedges[p], e.gradeds[l]);
            for (const auto& [w, m] : term.terms()) {
                BwbResult r = bwb(x, w);
                if (r.singular)
                    continue;
                book.add({p, static_cast<int>(l)}, r.degree - p, m * r.dim);
                if (contributions)
                    (*contributions)[r.degree - p].push_back({r.weight, m, m * r.dim});
            }
        }
    }
    return book;
}

CohomologyTable restricted_cohomology(const ZeroLocus& z, const FilteredBundle& e)
{
    std::map<int, std::vector<CohomologyEntry>> contributions;
    SpectralBook book = koszul_book(z, e, &contributions);
    return resolve_book(book, z.dimension(), contributions);
}

CohomologyTable structure_cohomology(const ZeroLocus& z)
{
    return restricted_cohomology(z, FilteredBundle::of(IrrDecomp::single(z.space().group().zero())));
}

}  // namespace bwbforge
