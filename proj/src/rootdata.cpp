#include "bwbforge/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

namespace bwbforge {

std::string to_string(const Weight& w)
{
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < w.size(); ++i)
        os << (i ? "," : "") << w[i];
    os << ']';
    return os.str();
}

std::string to_string(const Root& r)
{
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < r.size(); ++i)
        os << (i ? "," : "") << r[i];
    os << ')';
    return os.str();
}

void RootSystemSpec::validate() const
{
    bool ok = false;
    switch (family) {
    case 'A': ok = rank >= 1 && rank <= kMaxRank; break;
    case 'B':
    case 'C': ok = rank >= 2 && rank <= kMaxRank; break;
    case 'D': ok = rank >= 3 && rank <= kMaxRank; break;
    case 'E': ok = rank >= 6 && rank <= 8; break;
    case 'F': ok = rank == 4; break;
    case 'G': ok = rank == 2; break;
    default: break;
    }
    if (!ok)
        throw Error("invalid root system " + std::string(1, family) + std::to_string(rank));
}

std::string RootSystemSpec::name() const { return std::string(1, family) + std::to_string(rank); }

RootSystemSpec RootSystemSpec::parse(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    if (text.size() < 2 || !std::isalpha(static_cast<unsigned char>(text[0])))
        throw Error("cannot parse root system '" + std::string(text) + "'");
    RootSystemSpec spec;
    spec.family = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    int rank = 0;
    for (char ch : text.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw Error("cannot parse root system '" + std::string(text) + "'");
        rank = rank * 10 + (ch - '0');
        if (rank > 99)
            break;
    }
    spec.rank = rank;
    spec.validate();
    return spec;
}

namespace {

// Symmetrized Cartan data scaled to integers: (α_i, α_j) = form[i][j] / scale.
struct ScaledForm {
    std::vector<std::vector<int>> form;
    int scale = 1;
};

ScaledForm build_form(const RootSystemSpec& spec)
{
    const int r = spec.rank;
    ScaledForm f;
    f.form.assign(r, std::vector<int>(r, 0));
    auto edge = [&](int i, int j, int v) { f.form[i - 1][j - 1] = f.form[j - 1][i - 1] = v; };
    switch (spec.family) {
    case 'A':
        for (int i = 1; i <= r; ++i)
            f.form[i - 1][i - 1] = 2;
        for (int i = 1; i < r; ++i)
            edge(i, i + 1, -1);
        break;
    case 'B':
        f.scale = 2;
        for (int i = 1; i < r; ++i)
            f.form[i - 1][i - 1] = 4;
        f.form[r - 1][r - 1] = 2;
        for (int i = 1; i < r; ++i)
            edge(i, i + 1, -2);
        break;
    case 'C':
        f.scale = 2;
        for (int i = 1; i < r; ++i)
            f.form[i - 1][i - 1] = 2;
        f.form[r - 1][r - 1] = 4;
        for (int i = 1; i + 1 < r; ++i)
            edge(i, i + 1, -1);
        edge(r - 1, r, -2);
        break;
    case 'D':
        for (int i = 1; i <= r; ++i)
            f.form[i - 1][i - 1] = 2;
        for (int i = 1; i + 2 <= r - 1; ++i)
            edge(i, i + 1, -1);
        edge(r - 2, r - 1, -1);
        edge(r - 2, r, -1);
        break;
    case 'E':
        for (int i = 1; i <= r; ++i)
            f.form[i - 1][i - 1] = 2;
        edge(1, 3, -1);
        edge(2, 4, -1);
        for (int i = 3; i < r; ++i)
            edge(i, i + 1, -1);
        break;
    case 'F':
        f.scale = 2;
        f.form[0][0] = f.form[1][1] = 4;
        f.form[2][2] = f.form[3][3] = 2;
        edge(1, 2, -2);
        edge(2, 3, -2);
        edge(3, 4, -1);
        break;
    case 'G':
        f.scale = 3;
        f.form[0][0] = 2;
        f.form[1][1] = 6;
        edge(1, 2, -3);
        break;
    default: throw Error("unknown family");
    }
    return f;
}

std::vector<std::vector<Rational>> invert(const std::vector<std::vector<int>>& m)
{
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            a[i][j] = m[i][j];
        a[i][n + i] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        while (a[piv][col] == 0)
            ++piv;
        std::swap(a[piv], a[col]);
        Rational p = a[col][col];
        for (auto& x : a[col])
            x /= p;
        for (int row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0)
                continue;
            Rational factor = a[row][col];
            for (int j = 0; j < 2 * n; ++j)
                a[row][j] -= factor * a[col][j];
        }
    }
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv[i][j] = a[i][n + j];
    return inv;
}

}  // namespace

RootSystem::RootSystem(RootSystemSpec spec) : spec_(spec)
{
    spec_.validate();
    const int r = spec_.rank;
    ScaledForm f = build_form(spec_);
    form_ = f.form;
    scale_ = f.scale;
    half_.resize(r);
    for (int i = 0; i < r; ++i)
        half_[i] = form_[i][i] / 2;

    cartan_.assign(r, std::vector<int>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            cartan_[i][j] = 2 * form_[i][j] / form_[i][i];

    for (int j = 0; j < r; ++j) {
        Weight a(r);
        for (int i = 0; i < r; ++i)
            a[i] = cartan_[i][j];
        simple_weights_.push_back(a);
    }

    // Closure by root strings: β + α_i is a root iff p - <β, α_i^∨> > 0.
    std::vector<Root> layer;
    for (int i = 0; i < r; ++i) {
        Root a(r);
        a[i] = 1;
        layer.push_back(a);
        all_roots_.insert(a);
    }
    while (!layer.empty()) {
        std::sort(layer.begin(), layer.end());
        positive_.insert(positive_.end(), layer.begin(), layer.end());
        std::vector<Root> next;
        for (const Root& beta : layer) {
            Weight w = to_weight(beta);
            for (int i = 0; i < r; ++i) {
                Root down = beta;
                int p = 0;
                for (;;) {
                    down[i] -= 1;
                    if (!all_roots_.count(down))
                        break;
                    ++p;
                }
                if (p - w[i] > 0) {
                    Root up = beta;
                    up[i] += 1;
                    if (all_roots_.insert(up).second)
                        next.push_back(up);
                }
            }
        }
        layer = std::move(next);
    }
    for (const Root& a : positive_) {
        positive_weights_.push_back(to_weight(a));
        all_roots_.insert(-a);
    }
    cartan_inverse_ = invert(cartan_);
}

const RootSystem& RootSystem::get(RootSystemSpec spec)
{
    static std::mutex mu;
    static std::map<RootSystemSpec, std::unique_ptr<RootSystem>> registry;
    spec.validate();
    std::lock_guard lock(mu);
    auto& slot = registry[spec];
    if (!slot)
        slot = std::make_unique<RootSystem>(spec);
    return *slot;
}

Weight RootSystem::to_weight(const Root& r) const
{
    Weight w(rank());
    for (int j = 0; j < rank(); ++j)
        if (r[j] != 0)
            for (int i = 0; i < rank(); ++i)
                w[i] += r[j] * cartan_[i][j];
    return w;
}

Weight RootSystem::rho() const
{
    Weight w(rank());
    for (int i = 0; i < rank(); ++i)
        w[i] = 1;
    return w;
}

Weight RootSystem::fundamental(int i) const
{
    if (i < 1 || i > rank())
        throw Error("fundamental weight index out of range: " + std::to_string(i));
    Weight w(rank());
    w[i - 1] = 1;
    return w;
}

long long RootSystem::scaled_pairing(const Weight& w, const Root& alpha) const
{
    long long s = 0;
    for (int i = 0; i < rank(); ++i)
        s += static_cast<long long>(alpha[i]) * w[i] * half_[i];
    return s;
}

long long RootSystem::coroot_pairing(const Weight& w, const Root& alpha) const
{
    long long norm = scaled_pairing(to_weight(alpha), alpha);
    return 2 * scaled_pairing(w, alpha) / norm;
}

std::vector<Rational> RootSystem::to_root_coords(const Weight& w) const
{
    std::vector<Rational> c(rank());
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j)
            c[i] += cartan_inverse_[i][j] * w[j];
    return c;
}

Rational RootSystem::inner_product(const Weight& a, const Weight& b) const
{
    // (ϖ_i, α_j) = δ_ij (α_j, α_j)/2
    std::vector<Rational> cb = to_root_coords(b);
    Rational s = 0;
    for (int j = 0; j < rank(); ++j)
        s += cb[j] * a[j] * half_[j];
    return s / scale_;
}

Weight RootSystem::reflect(Weight w, int i) const
{
    const int c = w[i - 1];
    if (c != 0) {
        const Weight& a = simple_weights_[i - 1];
        for (int t = 0; t < rank(); ++t)
            w[t] -= c * a[t];
    }
    return w;
}

DominanceResult RootSystem::to_dominant_chamber(const Weight& w) const
{
    DominanceResult out;
    out.weight = w;
    const int r = rank();
    for (;;) {
        int neg = -1;
        for (int i = 0; i < r; ++i) {
            if (out.weight[i] == 0) {
                out.singular = true;
                return out;
            }
            if (neg < 0 && out.weight[i] < 0)
                neg = i;
        }
        if (neg < 0)
            return out;
        out.weight = reflect(out.weight, neg + 1);
        out.word.word.push_back(neg + 1);
    }
}

Weight parse_weight(std::string_view text, int rank)
{
    auto colon = text.find(':');
    if (colon != std::string_view::npos)
        text = text.substr(colon + 1);
    std::vector<int> values;
    std::string cur;
    bool open = false, closed = false;
    for (char ch : text) {
        if (ch == '[' && !open) {
            open = true;
        } else if (ch == ']' && open) {
            closed = true;
            break;
        } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+') {
            cur += ch;
        } else if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) {
                values.push_back(std::stoi(cur));
                cur.clear();
            }
        } else {
            throw Error("unexpected character '" + std::string(1, ch) + "' in weight");
        }
    }
    if (!cur.empty())
        values.push_back(std::stoi(cur));
    if (!open || !closed)
        throw Error("weight must be written as [c1,...,cr]");
    if (static_cast<int>(values.size()) != rank)
        throw Error("weight has " + std::to_string(values.size()) + " coordinates, expected " +
                    std::to_string(rank));
    return Weight(values);
}

std::string format_weight(const RootSystem& g, const Weight& w) { return g.name() + ": " + to_string(w); }

std::string format_root(const RootSystem& g, const Root& r) { return g.name() + " root: " + to_string(r); }

}  // namespace bwbforge
