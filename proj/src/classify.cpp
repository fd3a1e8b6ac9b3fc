#include "bwbforge/classify.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

namespace bwbforge {

namespace {

void levi_recursion(const HomSpace& x, Weight& w, int i, long long rank_cap, long long dex_cap,
                    std::vector<Summand>& out)
{
    const int n = x.group().rank();
    if (i > n) {
        const BigInt rank = x.rank(w);
        const long long dex0 = x.dex(w);
        for (long long t = 0; dex0 + t * static_cast<long long>(rank) <= dex_cap; ++t) {
            Weight lambda = w;
            lambda[x.k() - 1] = static_cast<int>(t);
            if (!lambda.is_zero())
                out.push_back({lambda, rank, dex0 + t * static_cast<long long>(rank)});
        }
        return;
    }
    if (i == x.k()) {
        levi_recursion(x, w, i + 1, rank_cap, dex_cap, out);
        return;
    }
    // rank and dex grow strictly in every Levi coordinate
    for (int c = 0;; ++c) {
        w[i - 1] = c;
        if (x.rank(w) > rank_cap || x.dex(w) > dex_cap)
            break;
        levi_recursion(x, w, i + 1, rank_cap, dex_cap, out);
    }
    w[i - 1] = 0;
}

std::string orbit_tag(const HomSpace& x, const IrrDecomp& f)
{
    std::string a = serialize(f);
    const RootSystem& g = x.group();
    const bool e6 = g.spec().family == 'E' && g.rank() == 6;
    if (e6 && (x.k() == 2 || x.k() == 4)) {
        IrrDecomp s;
        for (const auto& [w, m] : f.terms())
            s.add(diagram_automorphism(g, w), m);
        a = std::min(a, serialize(s));
    }
    std::string space = x.name();
    if (e6 && (x.k() == 5 || x.k() == 6))
        space = "E6/P" + std::to_string(x.k() == 6 ? 1 : 3);
    return space + " " + a;
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F body)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mu;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < n;) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

}  // namespace

std::vector<Summand> admissible_summands(const HomSpace& x, long long rank_cap, long long dex_cap)
{
    std::vector<Summand> out;
    if (rank_cap < 1 || dex_cap < 1)
        return out;
    Weight w = x.group().zero();
    levi_recursion(x, w, 1, rank_cap, dex_cap, out);
    return out;
}

const std::vector<ExceptionEntry>& exception_list()
{
    static const std::vector<ExceptionEntry> list = {
        {"E6/P1", Weight{0, 0, 0, 0, 0, 1},
         "a general section of E_w6 on E6/P1 vanishes nowhere"},
    };
    return list;
}

Weight diagram_automorphism(const RootSystem& g, const Weight& w)
{
    if (!(g.spec().family == 'E' && g.rank() == 6))
        return w;
    return Weight{w[5], w[1], w[4], w[3], w[2], w[0]};
}

Enumeration enumerate_candidates(const HomSpace& x, int d, const EnumerationOptions& opt)
{
    Enumeration out;
    const long long R = x.dimension() - d;
    const long long iota = x.fano_index();
    if (R < 1) {
        out.rejected = "rank dim - d = " + std::to_string(R) + " leaves no bundle";
        return out;
    }
    const std::vector<Summand> items = admissible_summands(x, R, iota);
    for (const auto& s : items)
        if (s.dex < 1)
            throw InternalError("summand " + to_string(s.weight) + " with dex " + std::to_string(s.dex));
    if (items.empty()) {
        out.rejected = "no admissible summand";
        return out;
    }
    if (opt.ratio_fast_path) {
        // Σdex/Σrank = ι/R needs some summand with dex/rank ≤ ι/R
        const bool any_low = std::any_of(items.begin(), items.end(), [&](const Summand& s) {
            return BigInt(s.dex) * R <= BigInt(iota) * s.rank;
        });
        if (!any_low) {
            out.rejected = "every summand has dex/rank > " + std::to_string(iota) + "/" + std::to_string(R);
            return out;
        }
    }

    const std::size_t n = items.size();
    std::vector<long long> rank(n), dex(n);
    for (std::size_t i = 0; i < n; ++i) {
        rank[i] = static_cast<long long>(items[i].rank);
        dex[i] = items[i].dex;
    }
    // suffix extremes of rank/dex for feasibility pruning, as fractions
    std::vector<std::size_t> best_hi(n + 1, n), best_lo(n + 1, n);
    for (std::size_t i = n; i-- > 0;) {
        best_hi[i] = i;
        best_lo[i] = i;
        if (const std::size_t j = best_hi[i + 1]; j < n && rank[j] * dex[i] > rank[i] * dex[j])
            best_hi[i] = j;
        if (const std::size_t j = best_lo[i + 1]; j < n && rank[j] * dex[i] < rank[i] * dex[j])
            best_lo[i] = j;
    }

    std::vector<int> count(n, 0);
    auto emit = [&] {
        IrrDecomp f;
        for (std::size_t i = 0; i < n; ++i)
            if (count[i])
                f.add(items[i].weight, count[i]);
        CandidatePair c{x, f, d, orbit_tag(x, f), {}};
        bool excluded = false;
        for (const auto& e : exception_list())
            if (e.space == x.name() && f.multiplicity(e.weight) > 0) {
                c.notes.push_back(e.reason);
                excluded = true;
            }
        if (excluded && opt.use_exceptions)
            out.excluded.push_back(std::move(c));
        else
            out.candidates.push_back(std::move(c));
    };
    auto dfs = [&](auto&& self, std::size_t i, long long rr, long long rd) -> void {
        if (rr == 0 && rd == 0) {
            emit();
            return;
        }
        if (i >= n || rr <= 0 || rd <= 0)
            return;
        // rr/rd must lie between the extreme ratios still available
        const std::size_t hi = best_hi[i], lo = best_lo[i];
        if (rr * dex[hi] > rank[hi] * rd || rr * dex[lo] < rank[lo] * rd)
            return;
        for (int c = static_cast<int>(std::min(rr / rank[i], rd / dex[i])); c >= 0; --c) {
            count[i] = c;
            self(self, i + 1, rr - c * rank[i], rd - c * dex[i]);
        }
        count[i] = 0;
    };
    dfs(dfs, 0, R, iota);
    std::reverse(out.candidates.begin(), out.candidates.end());
    std::reverse(out.excluded.begin(), out.excluded.end());
    if (out.candidates.empty() && out.excluded.empty())
        out.rejected = "no summand multiset with rank " + std::to_string(R) + " and dex " + std::to_string(iota);
    return out;
}

std::vector<HomSpace> search_spaces(Family family)
{
    std::vector<HomSpace> out = exceptional_spaces();
    if (family == Family::All) {
        for (int n = 2; n <= 7; ++n)
            for (int k = 1; k <= (n + 1) / 2; ++k)
                out.emplace_back(RootSystem::get("A" + std::to_string(n)), k);
        for (int n = 2; n <= 5; ++n)
            for (int k = 1; k <= n; ++k)
                out.emplace_back(RootSystem::get("B" + std::to_string(n)), k);
        for (int n = 3; n <= 5; ++n)
            for (int k = 1; k <= n; ++k)
                out.emplace_back(RootSystem::get("C" + std::to_string(n)), k);
        for (int n = 4; n <= 6; ++n)
            for (int k = 1; k <= n - 1; ++k)
                out.emplace_back(RootSystem::get("D" + std::to_string(n)), k);
    }
    return out;
}

ClassificationReport classify(int d, const ClassifyOptions& opt)
{
    const std::vector<HomSpace> spaces = search_spaces(opt.family);
    std::vector<Enumeration> found(spaces.size());
    parallel_for(spaces.size(), opt.threads,
                 [&](std::size_t i) { found[i] = enumerate_candidates(spaces[i], d, opt.enumeration); });

    ClassificationReport rep;
    rep.d = d;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
        const bool exceptional = i < exceptional_spaces().size();
        for (auto& c : found[i].candidates)
            rep.rows.push_back({std::move(c), std::nullopt, exceptional});
        for (auto& c : found[i].excluded)
            rep.excluded.push_back(std::move(c));
        if (found[i].rejected && found[i].candidates.empty())
            rep.rejected.emplace_back(spaces[i].name(), *found[i].rejected);
    }
    if (opt.hodge)
        parallel_for(rep.rows.size(), opt.threads, [&](std::size_t i) {
            rep.rows[i].hodge = assemble(ZeroLocus(rep.rows[i].pair.space, rep.rows[i].pair.bundle));
        });
    std::set<std::string> seen;
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
        if (seen.insert(rep.rows[i].pair.orbit).second)
            rep.deduplicated.push_back(i);
    return rep;
}

}  // namespace bwbforge
