#include "bwbforge/homspace.hpp"

#include <algorithm>
#include <cctype>

namespace bwbforge {

namespace {

GradedCotangent build_gradation(const RootSystem& g, int k, const ReductiveContext& levi)
{
    GradedCotangent out;
    for (const Root& a : g.positive_roots())
        out.depth = std::max(out.depth, a[k - 1]);
    out.pieces.resize(out.depth);
    for (const Root& pos : g.positive_roots()) {
        const int l = pos[k - 1];
        if (l == 0)
            continue;
        const Root a = -pos;
        bool highest = true;
        for (int i = 1; i <= g.rank() && highest; ++i) {
            if (!levi.in_levi(i))
                continue;
            Root up = a;
            up[i - 1] += 1;
            if (g.is_root(up))
                highest = false;
        }
        if (highest)
            out.pieces[out.depth - l].add(g.to_weight(a), 1);
    }
    return out;
}

}  // namespace

HomSpace::HomSpace(const RootSystem& g, int k)
    : g_(&g), k_(k), levi_(ReductiveContext::maximal_levi(g, k)), gradation_(build_gradation(g, k, levi_))
{
}

HomSpace HomSpace::parse(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        throw Error("space must be written as G/Pk, e.g. E6/P3");
    const RootSystem& g = RootSystem::get(text.substr(0, slash));
    std::string_view rest = text.substr(slash + 1);
    if (!rest.empty() && (rest.front() == 'P' || rest.front() == 'p'))
        rest.remove_prefix(1);
    int k = 0;
    if (rest.empty())
        throw Error("missing parabolic index in '" + std::string(text) + "'");
    for (char ch : rest) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw Error("bad parabolic index in '" + std::string(text) + "'");
        k = k * 10 + (ch - '0');
    }
    if (k < 1 || k > g.rank())
        throw Error("parabolic index out of range in '" + std::string(text) + "'");
    return HomSpace(g, k);
}

std::string HomSpace::name() const { return g_->name() + "/P" + std::to_string(k_); }

int HomSpace::dimension() const
{
    int n = 0;
    for (const Root& a : g_->positive_roots())
        if (a[k_ - 1] > 0)
            ++n;
    return n;
}

int HomSpace::fano_index() const
{
    Weight s = g_->zero();
    for (std::size_t i = 0; i < g_->positive_roots().size(); ++i)
        if (g_->positive_roots()[i][k_ - 1] > 0)
            s += g_->positive_root_weights()[i];
    return s[k_ - 1];
}

BigInt HomSpace::minimal_embedding_dim() const { return weyl_dim(full(), g_->fundamental(k_)) - 1; }

Weight HomSpace::line(int t) const { return t * g_->fundamental(k_); }

BigInt HomSpace::rank(const Weight& lambda) const { return weyl_dim(levi_, lambda); }

BigInt HomSpace::rank(const IrrDecomp& bundle) const { return total_dim(levi_, bundle); }

long long HomSpace::dex(const Weight& lambda) const { return sum_of_weights(levi_, lambda)[k_ - 1]; }

long long HomSpace::dex(const IrrDecomp& bundle) const
{
    BigInt total = 0;
    for (const auto& [w, m] : bundle.terms())
        total += m * dex(w);
    return static_cast<long long>(total);
}

bool has_dex_closed_form(const HomSpace& x)
{
    const char f = x.group().spec().family;
    const int r = x.group().rank();
    return f == 'A' || f == 'C' || (f == 'D' && r >= 4 && x.k() == r);
}

Rational dex_closed_form(const HomSpace& x, const Weight& lambda)
{
    if (!has_dex_closed_form(x))
        throw Error("no closed form for dex on " + x.name());
    const int r = x.group().rank();
    const int k = x.k();
    auto tail = [&](int j, int last) {  // Σ_{i=j}^{last} λ_i, 1-based
        Rational s = 0;
        for (int i = j; i <= last; ++i)
            s += lambda[i - 1];
        return s;
    };
    Rational q = 0;
    switch (x.group().spec().family) {
    case 'A': {
        Rational a = 0, b = 0;
        for (int j = 1; j <= k; ++j)
            a += tail(j, r);
        for (int j = k + 1; j <= r; ++j)
            b += tail(j, r);
        q = a / k - b / (r + 1 - k);
        break;
    }
    case 'C': {
        for (int j = 1; j <= k; ++j)
            q += tail(j, r);
        q /= k;
        break;
    }
    default: {
        // spinor variety: ε-coordinates of λ, times 2 for the half Plücker class
        for (int j = 1; j < r; ++j)
            q += tail(j, r - 2) + Rational(lambda[r - 2] + lambda[r - 1], 2);
        q += Rational(lambda[r - 1] - lambda[r - 2], 2);  // ε_r
        q = 2 * q / r;
        break;
    }
    }
    return q * Rational(x.rank(lambda));
}

std::vector<HomSpace> exceptional_spaces()
{
    std::vector<HomSpace> out;
    for (const char* name : {"E6", "E7", "E8", "F4", "G2"}) {
        const RootSystem& g = RootSystem::get(name);
        for (int k = 1; k <= g.rank(); ++k) {
            if (g.spec().family == 'E' && g.rank() == 6 && (k == 5 || k == 6))
                continue;
            out.emplace_back(g, k);
        }
    }
    return out;
}

}  // namespace bwbforge
