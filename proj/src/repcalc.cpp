#include "bwbforge/repcalc.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <tuple>

namespace bwbforge {

// ---------------------------------------------------------------- context

ReductiveContext::ReductiveContext(const RootSystem& g, std::uint32_t levi_mask) : g_(&g), mask_(levi_mask)
{
    const int r = g.rank();
    mask_ &= (r >= 32 ? ~0u : ((1u << r) - 1u));
    for (const Root& a : g.positive_roots()) {
        bool inside = true;
        for (int i = 0; i < r; ++i)
            if (a[i] != 0 && !in_levi(i + 1))
                inside = false;
        if (inside)
            roots_.push_back(a);
    }
    height_coeffs_.assign(r, 0);
    for (const Root& a : roots_) {
        long long norm = g.scaled_pairing(g.to_weight(a), a);  // s(α,α)
        for (int j = 0; j < r; ++j)
            height_coeffs_[j] += 2LL * a[j] * g.scaled_half_length(j) / norm;
    }
}

ReductiveContext ReductiveContext::full(const RootSystem& g) { return {g, (1u << g.rank()) - 1u}; }

ReductiveContext ReductiveContext::maximal_levi(const RootSystem& g, int k)
{
    if (k < 1 || k > g.rank())
        throw Error("parabolic index out of range: " + std::to_string(k));
    return {g, ((1u << g.rank()) - 1u) & ~(1u << (k - 1))};
}

bool ReductiveContext::is_full() const { return mask_ == (1u << g_->rank()) - 1u; }

std::vector<int> ReductiveContext::omitted() const
{
    std::vector<int> out;
    for (int i = 1; i <= g_->rank(); ++i)
        if (!in_levi(i))
            out.push_back(i);
    return out;
}

bool ReductiveContext::is_dominant(const Weight& w) const
{
    for (int i = 1; i <= g_->rank(); ++i)
        if (in_levi(i) && w[i - 1] < 0)
            return false;
    return true;
}

bool ReductiveContext::is_central(const Weight& w) const
{
    for (int i = 1; i <= g_->rank(); ++i)
        if (in_levi(i) && w[i - 1] != 0)
            return false;
    return true;
}

std::pair<Weight, Weight> ReductiveContext::split_center(const Weight& w) const
{
    Weight semi = w;
    for (int i = 1; i <= g_->rank(); ++i)
        if (!in_levi(i))
            semi[i - 1] = 0;
    return {semi, w - semi};
}

long long ReductiveContext::height(const Weight& w) const
{
    long long h = 0;
    for (int j = 0; j < g_->rank(); ++j)
        h += height_coeffs_[j] * w[j];
    return h;
}

ReductiveContext::Straightened ReductiveContext::straighten(const Weight& w) const
{
    const int r = g_->rank();
    Weight x = w + g_->rho();
    int sign = 1;
    for (;;) {
        int neg = -1;
        for (int i = 1; i <= r; ++i) {
            if (!in_levi(i))
                continue;
            if (x[i - 1] == 0)
                return {0, w};
            if (neg < 0 && x[i - 1] < 0)
                neg = i;
        }
        if (neg < 0)
            break;
        x = g_->reflect(x, neg);
        sign = -sign;
    }
    return {sign, x - g_->rho()};
}

std::string ReductiveContext::key() const
{
    std::ostringstream os;
    os << g_->name() << ':' << std::hex << mask_;
    return os.str();
}

// -------------------------------------------------------------- character

void Character::add(const Weight& w, const BigInt& m)
{
    if (m == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(w, m);
    if (!inserted) {
        it->second += m;
        if (it->second == 0)
            terms_.erase(it);
    }
}

BigInt Character::multiplicity(const Weight& w) const
{
    auto it = terms_.find(w);
    return it == terms_.end() ? BigInt(0) : it->second;
}

BigInt Character::total() const
{
    BigInt t = 0;
    for (const auto& [w, m] : terms_)
        t += m;
    return t;
}

std::vector<std::pair<Weight, BigInt>> Character::sorted() const
{
    std::vector<std::pair<Weight, BigInt>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

Character Character::shifted(const Weight& by) const
{
    if (by.is_zero())
        return *this;
    Character c;
    c.terms_.reserve(terms_.size());
    for (const auto& [w, m] : terms_)
        c.terms_.emplace(w + by, m);
    return c;
}

Character Character::adams(int m) const
{
    Character c;
    for (const auto& [w, mult] : terms_)
        c.add(m * w, mult);
    return c;
}

Character Character::scaled(const BigInt& factor) const
{
    Character c;
    if (factor == 0)
        return c;
    for (const auto& [w, m] : terms_)
        c.terms_.emplace(w, m * factor);
    return c;
}

Character& Character::operator+=(const Character& o)
{
    for (const auto& [w, m] : o.terms_)
        add(w, m);
    return *this;
}

Character& Character::operator-=(const Character& o)
{
    for (const auto& [w, m] : o.terms_)
        add(w, -m);
    return *this;
}

Character convolve(const Character& a, const Character& b)
{
    Character c;
    for (const auto& [wa, ma] : a.terms_)
        for (const auto& [wb, mb] : b.terms_)
            c.add(wa + wb, ma * mb);
    return c;
}

// ----------------------------------------------------------------- decomp

IrrDecomp IrrDecomp::single(const Weight& w, const BigInt& m)
{
    IrrDecomp d;
    d.add(w, m);
    return d;
}

void IrrDecomp::add(const Weight& w, const BigInt& m)
{
    if (m == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(w, m);
    if (!inserted) {
        it->second += m;
        if (it->second == 0)
            terms_.erase(it);
    }
}

BigInt IrrDecomp::multiplicity(const Weight& w) const
{
    auto it = terms_.find(w);
    return it == terms_.end() ? BigInt(0) : it->second;
}

IrrDecomp IrrDecomp::shifted(const Weight& by) const
{
    if (by.is_zero())
        return *this;
    IrrDecomp d;
    for (const auto& [w, m] : terms_)
        d.terms_.emplace(w + by, m);
    return d;
}

IrrDecomp IrrDecomp::scaled(const BigInt& factor) const
{
    IrrDecomp d;
    if (factor == 0)
        return d;
    for (const auto& [w, m] : terms_)
        d.terms_.emplace(w, m * factor);
    return d;
}

IrrDecomp& IrrDecomp::operator+=(const IrrDecomp& o)
{
    for (const auto& [w, m] : o.terms_)
        add(w, m);
    return *this;
}

// ------------------------------------------------------------------ memos

namespace {

template <class K, class V, class H = std::hash<K>>
class Memo {
public:
    std::shared_ptr<const V> find(const K& k) const
    {
        std::shared_lock lock(mu_);
        auto it = map_.find(k);
        return it == map_.end() ? nullptr : it->second;
    }
    std::shared_ptr<const V> insert(const K& k, std::shared_ptr<const V> v)
    {
        std::unique_lock lock(mu_);
        return map_.try_emplace(k, std::move(v)).first->second;
    }

private:
    mutable std::shared_mutex mu_;
    std::unordered_map<K, std::shared_ptr<const V>, H> map_;
};

std::string weight_key(const Weight& w)
{
    std::string s;
    for (int i = 0; i < w.size(); ++i) {
        s += std::to_string(w[i]);
        s += ',';
    }
    return s;
}

void require_dominant(const ReductiveContext& ctx, const Weight& lambda)
{
    if (lambda.size() != ctx.ambient().rank())
        throw Error("weight " + to_string(lambda) + " has wrong rank for " + ctx.ambient().name());
    if (!ctx.is_dominant(lambda))
        throw Error("weight " + to_string(lambda) + " is not dominant for " + ctx.key());
}

std::mutex store_mu;
std::shared_ptr<PlethysmStore> store;

std::shared_ptr<PlethysmStore> current_store()
{
    std::lock_guard lock(store_mu);
    return store;
}

}  // namespace

void set_plethysm_store(std::shared_ptr<PlethysmStore> s)
{
    std::lock_guard lock(store_mu);
    store = std::move(s);
}

// -------------------------------------------------------------- dimension

BigInt weyl_dim(const ReductiveContext& ctx, const Weight& lambda)
{
    require_dominant(ctx, lambda);
    const RootSystem& g = ctx.ambient();
    const Weight shifted = lambda + g.rho();
    const Weight rho = g.rho();
    BigInt num = 1, den = 1;
    for (const Root& a : ctx.positive_roots()) {
        num *= g.scaled_pairing(shifted, a);
        den *= g.scaled_pairing(rho, a);
    }
    if (num % den != 0)
        throw InternalError("Weyl dimension is not integral");
    return num / den;
}

BigInt total_dim(const ReductiveContext& ctx, const IrrDecomp& rep)
{
    BigInt t = 0;
    for (const auto& [w, m] : rep.terms())
        t += m * weyl_dim(ctx, w);
    return t;
}

// ------------------------------------------------------------- Freudenthal

namespace {

Weight levi_dominant(const ReductiveContext& ctx, Weight x)
{
    const RootSystem& g = ctx.ambient();
    for (;;) {
        int neg = -1;
        for (int i = 1; i <= g.rank(); ++i)
            if (ctx.in_levi(i) && x[i - 1] < 0) {
                neg = i;
                break;
            }
        if (neg < 0)
            return x;
        x = g.reflect(x, neg);
    }
}

// Freudenthal on dominant weights only, then W_L-orbit expansion.
Character freudenthal(const ReductiveContext& ctx, const Weight& lambda)
{
    const RootSystem& g = ctx.ambient();
    const int r = g.rank();
    const Weight two_rho = 2 * g.rho();
    const auto& roots = ctx.positive_roots();
    std::vector<Weight> root_w;
    for (const Root& a : roots)
        root_w.push_back(g.to_weight(a));

    // dominant weights below λ are linked by positive roots through dominant weights
    std::unordered_map<Weight, Root, CoordsHash> depth;
    depth.emplace(lambda, Root(r));
    std::vector<Weight> order{lambda};
    for (std::size_t head = 0; head < order.size(); ++head) {
        const Weight mu = order[head];
        const Root d = depth.at(mu);
        for (std::size_t a = 0; a < roots.size(); ++a) {
            Weight nu = mu - root_w[a];
            if (!ctx.is_dominant(nu) || depth.count(nu))
                continue;
            depth.emplace(nu, d + roots[a]);
            order.push_back(nu);
        }
    }
    std::sort(order.begin(), order.end(), [&](const Weight& x, const Weight& y) {
        long long hx = ctx.height(x), hy = ctx.height(y);
        return hx != hy ? hx > hy : y < x;
    });

    std::unordered_map<Weight, BigInt, CoordsHash> dom;
    auto mult_of = [&](const Weight& w) -> const BigInt* {
        auto it = dom.find(levi_dominant(ctx, w));
        return it == dom.end() ? nullptr : &it->second;
    };
    dom.emplace(lambda, 1);
    for (const Weight& mu : order) {
        if (mu == lambda)
            continue;
        const Root& d = depth.at(mu);
        const Weight sum = lambda + mu + two_rho;
        long long den = 0;
        for (int i = 0; i < r; ++i)
            den += static_cast<long long>(d[i]) * sum[i] * g.scaled_half_length(i);
        if (den <= 0)
            throw InternalError("Freudenthal denominator vanished at a dominant weight");
        BigInt rhs = 0;
        for (std::size_t a = 0; a < roots.size(); ++a) {
            Weight up = mu + root_w[a];
            while (const BigInt* m = mult_of(up)) {
                rhs += *m * g.scaled_pairing(up, roots[a]);
                up += root_w[a];
            }
        }
        rhs *= 2;
        if (rhs % den != 0)
            throw InternalError("Freudenthal recursion produced a non-integer multiplicity");
        BigInt m = rhs / den;
        if (m <= 0)
            throw InternalError("Freudenthal recursion lost a dominant weight");
        dom.emplace(mu, m);
    }

    Character chi;
    for (const auto& [mu, m] : dom) {
        std::vector<Weight> orbit{mu};
        std::unordered_map<Weight, char, CoordsHash> seen{{mu, 1}};
        for (std::size_t head = 0; head < orbit.size(); ++head) {
            const Weight w = orbit[head];
            for (int i = 1; i <= r; ++i) {
                if (!ctx.in_levi(i) || w[i - 1] <= 0)
                    continue;
                Weight v = g.reflect(w, i);
                if (seen.emplace(v, 1).second)
                    orbit.push_back(v);
            }
        }
        for (const Weight& w : orbit)
            chi.add(w, m);
    }
    return chi;
}

Memo<std::string, Character>& char_memo()
{
    static Memo<std::string, Character> m;
    return m;
}

}  // namespace

std::shared_ptr<const Character> weight_multiplicities(const ReductiveContext& ctx, const Weight& lambda)
{
    require_dominant(ctx, lambda);
    auto [semi, center] = ctx.split_center(lambda);
    const std::string key = ctx.key() + '|' + weight_key(semi);
    auto base = char_memo().find(key);
    if (!base)
        base = char_memo().insert(key, std::make_shared<const Character>(freudenthal(ctx, semi)));
    if (center.is_zero())
        return base;
    return std::make_shared<const Character>(base->shifted(center));
}

Character character_of(const ReductiveContext& ctx, const IrrDecomp& rep)
{
    Character c;
    for (const auto& [w, m] : rep.terms())
        c += weight_multiplicities(ctx, w)->scaled(m);
    return c;
}

// ------------------------------------------------------------------- dual

Weight dual_highest_weight(const ReductiveContext& ctx, const Weight& lambda)
{
    require_dominant(ctx, lambda);
    const RootSystem& g = ctx.ambient();
    Weight x = lambda;
    for (;;) {
        int pos = -1;
        for (int i = 1; i <= g.rank(); ++i)
            if (ctx.in_levi(i) && x[i - 1] > 0) {
                pos = i;
                break;
            }
        if (pos < 0)
            break;
        x = g.reflect(x, pos);
    }
    return -x;
}

IrrDecomp dual(const ReductiveContext& ctx, const IrrDecomp& rep)
{
    IrrDecomp d;
    for (const auto& [w, m] : rep.terms())
        d.add(dual_highest_weight(ctx, w), m);
    return d;
}

// ---------------------------------------------------------- decomposition

IrrDecomp decompose(const ReductiveContext& ctx, Character chi)
{
    IrrDecomp out;
    while (!chi.empty()) {
        const Weight* best = nullptr;
        long long best_h = std::numeric_limits<long long>::min();
        for (const auto& [w, m] : chi.terms()) {
            long long h = ctx.height(w);
            if (!best || h > best_h || (h == best_h && *best < w)) {
                best = &w;
                best_h = h;
            }
        }
        const Weight top = *best;
        const BigInt m = chi.multiplicity(top);
        if (m < 0)
            throw InternalError("peeling hit a negative multiplicity at " + to_string(top));
        if (!ctx.is_dominant(top))
            throw InternalError("peeling found a non-dominant maximal weight " + to_string(top));
        out.add(top, m);
        chi -= weight_multiplicities(ctx, top)->scaled(m);
    }
    return out;
}

IrrDecomp decompose_by_straightening(const ReductiveContext& ctx, const Character& chi)
{
    IrrDecomp out;
    for (const auto& [w, m] : chi.terms()) {
        auto st = ctx.straighten(w);
        if (st.sign != 0)
            out.add(st.weight, st.sign > 0 ? m : BigInt(-m));
    }
    for (const auto& [w, m] : out.terms())
        if (m < 0)
            throw InternalError("straightening produced a negative multiplicity at " + to_string(w));
    return out;
}

// ----------------------------------------------------------------- tensor

namespace {

Memo<std::string, IrrDecomp>& tensor_memo()
{
    static Memo<std::string, IrrDecomp> m;
    return m;
}

IrrDecomp tensor_irreducible(const ReductiveContext& ctx, const Weight& a, const Weight& b)
{
    auto [a0, ca] = ctx.split_center(a);
    auto [b0, cb] = ctx.split_center(b);
    if (b0 < a0)
        std::swap(a0, b0);
    const Weight shift = ca + cb;
    if (a0.is_zero())
        return IrrDecomp::single(b0 + shift);
    const std::string key = ctx.key() + '|' + weight_key(a0) + '|' + weight_key(b0);
    auto hit = tensor_memo().find(key);
    if (!hit) {
        // walk the weights of the smaller factor
        Weight big = a0, small = b0;
        if (weyl_dim(ctx, a0) < weyl_dim(ctx, b0))
            std::swap(big, small);
        IrrDecomp out;
        for (const auto& [mu, m] : weight_multiplicities(ctx, small)->terms()) {
            auto st = ctx.straighten(big + mu);
            if (st.sign != 0)
                out.add(st.weight, st.sign > 0 ? m : BigInt(-m));
        }
        for (const auto& [w, m] : out.terms())
            if (m < 0)
                throw InternalError("Klimyk expansion produced a negative multiplicity");
        hit = tensor_memo().insert(key, std::make_shared<const IrrDecomp>(std::move(out)));
    }
    return hit->shifted(shift);
}

}  // namespace

IrrDecomp tensor_decompose(const ReductiveContext& ctx, const IrrDecomp& a, const IrrDecomp& b)
{
    IrrDecomp out;
    for (const auto& [wa, ma] : a.terms()) {
        require_dominant(ctx, wa);
        for (const auto& [wb, mb] : b.terms()) {
            require_dominant(ctx, wb);
            out += tensor_irreducible(ctx, wa, wb).scaled(ma * mb);
        }
    }
    return out;
}

// ---------------------------------------------------------------- powers

namespace {

using Series = std::vector<IrrDecomp>;  // coefficient of t^j

Memo<std::string, Series>& power_memo()
{
    static Memo<std::string, Series> m;
    return m;
}

// Λ^j or S^j of V(λ0) for j = 0..k via Newton's identities on characters.
Series newton_series(const ReductiveContext& ctx, const Weight& lambda0, int k, bool exterior)
{
    const auto base = weight_multiplicities(ctx, lambda0);
    std::vector<Character> adams(k + 1);
    for (int i = 1; i <= k; ++i)
        adams[i] = base->adams(i);
    std::vector<Character> e(k + 1);
    e[0].add(Weight(ctx.ambient().rank()), 1);
    for (int j = 1; j <= k; ++j) {
        Character acc;
        for (int i = 1; i <= j; ++i) {
            Character term = convolve(adams[i], e[j - i]);
            if (exterior && (i % 2 == 0))
                acc -= term;
            else
                acc += term;
        }
        Character next;
        for (const auto& [w, m] : acc.terms()) {
            if (m % j != 0)
                throw InternalError("Newton identity produced a non-integral character");
            next.add(w, m / j);
        }
        e[j] = std::move(next);
    }
    Series out(k + 1);
    for (int j = 0; j <= k; ++j)
        out[j] = decompose(ctx, e[j]);
    return out;
}

// Series of an irreducible V(λ) truncated at k, memoized with the center stripped.
Series irreducible_series(const ReductiveContext& ctx, const Weight& lambda, int k, bool exterior)
{
    auto [semi, center] = ctx.split_center(lambda);
    const BigInt dim = weyl_dim(ctx, semi);
    if (exterior && dim < k)
        k = static_cast<int>(dim);
    Series base;
    const std::string prefix = std::string(exterior ? "ext" : "sym") + '|' + ctx.key() + '|' + weight_key(semi);
    const std::string key = prefix + '|' + std::to_string(k);
    if (auto hit = power_memo().find(key)) {
        base = *hit;
    } else {
        auto st = current_store();
        bool loaded = st != nullptr;
        if (loaded) {
            base.resize(k + 1);
            for (int j = 0; j <= k && loaded; ++j)
                loaded = st->load(prefix + '|' + std::to_string(j), base[j]);
        }
        if (!loaded) {
            base = newton_series(ctx, semi, k, exterior);
            if (st)
                for (int j = 0; j <= k; ++j)
                    st->save(prefix + '|' + std::to_string(j), base[j]);
        }
        power_memo().insert(key, std::make_shared<const Series>(base));
    }
    for (int j = 0; j < static_cast<int>(base.size()); ++j)
        base[j] = base[j].shifted(j * center);
    return base;
}

Series multiply(const ReductiveContext& ctx, const Series& a, const Series& b, int k)
{
    Series out(std::min<std::size_t>(k + 1, a.size() + b.size() - 1));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size() && i + j < out.size(); ++j)
            if (!a[i].empty() && !b[j].empty())
                out[i + j] += tensor_decompose(ctx, a[i], b[j]);
    return out;
}

Series power_series(const ReductiveContext& ctx, const IrrDecomp& rep, int k, bool exterior)
{
    Series acc{IrrDecomp::single(Weight(ctx.ambient().rank()))};
    for (const auto& [w, m] : rep.terms()) {
        require_dominant(ctx, w);
        if (m < 0)
            throw Error("cannot take powers of a virtual representation");
        const Series s = irreducible_series(ctx, w, k, exterior);
        for (BigInt c = 0; c < m; ++c)
            acc = multiply(ctx, acc, s, k);
    }
    return acc;
}

int checked_degree(const ReductiveContext& ctx, const IrrDecomp& rep, int k, bool exterior)
{
    if (k < 0)
        throw Error("negative power");
    if (exterior) {
        const BigInt rank = total_dim(ctx, rep);
        if (rank < k)
            throw Error("exterior power " + std::to_string(k) + " exceeds rank " + rank.str());
    }
    return k;
}

}  // namespace

IrrDecomp exterior_power(const ReductiveContext& ctx, const IrrDecomp& rep, int k)
{
    checked_degree(ctx, rep, k, true);
    Series s = power_series(ctx, rep, k, true);
    return k < static_cast<int>(s.size()) ? s[k] : IrrDecomp{};
}

IrrDecomp symmetric_power(const ReductiveContext& ctx, const IrrDecomp& rep, int k)
{
    checked_degree(ctx, rep, k, false);
    Series s = power_series(ctx, rep, k, false);
    return k < static_cast<int>(s.size()) ? s[k] : IrrDecomp{};
}

std::vector<IrrDecomp> exterior_powers(const ReductiveContext& ctx, const IrrDecomp& rep, int max_k)
{
    const BigInt rank = total_dim(ctx, rep);
    if (rank < max_k)
        max_k = static_cast<int>(rank);
    Series s = power_series(ctx, rep, max_k, true);
    s.resize(max_k + 1);
    return s;
}

// --------------------------------------------------------- sum of weights

Weight sum_of_weights(const ReductiveContext& ctx, const Weight& lambda)
{
    const auto chi = weight_multiplicities(ctx, lambda);
    const int r = ctx.ambient().rank();
    std::vector<BigInt> acc(r);
    for (const auto& [w, m] : chi->terms())
        for (int i = 0; i < r; ++i)
            acc[i] += m * w[i];
    Weight out(r);
    for (int i = 0; i < r; ++i) {
        if (acc[i] > std::numeric_limits<int>::max() || acc[i] < std::numeric_limits<int>::min())
            throw Error("sum of weights overflows");
        out[i] = static_cast<int>(acc[i]);
    }
    return out;
}

// ------------------------------------------------------------ persistence

std::string serialize(const IrrDecomp& rep)
{
    std::ostringstream os;
    for (const auto& [w, m] : rep.terms()) {
        for (int i = 0; i < w.size(); ++i)
            os << w[i] << ' ';
        os << ": " << m << ";\n";
    }
    return os.str();
}

IrrDecomp deserialize_irrdecomp(const std::string& text)
{
    IrrDecomp out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        auto colon = line.find(':');
        auto semi = line.find(';');
        if (colon == std::string::npos || semi == std::string::npos || semi < colon)
            throw Error("malformed decomposition record");
        std::istringstream ws(line.substr(0, colon));
        std::vector<int> v;
        int x;
        while (ws >> x)
            v.push_back(x);
        std::string mult = line.substr(colon + 1, semi - colon - 1);
        mult.erase(0, mult.find_first_not_of(' '));
        out.add(Weight(v), BigInt(mult));
    }
    return out;
}

}  // namespace bwbforge
