// Acceptance checks. Prints one PASS/FAIL line per criterion; exits nonzero if any fails.
#include <json.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "bwbforge/bundle_expr.hpp"
#include "bwbforge/classify.hpp"
#include "bwbforge/cli.hpp"

using namespace bwbforge;
using json = nlohmann::json;

namespace {

struct Check {
    std::vector<std::string> failures;
    void expect(bool ok, const std::string& what)
    {
        if (!ok)
            failures.push_back(what);
    }
    template <class A, class B>
    void equal(const A& got, const B& want, const std::string& what)
    {
        if (!(got == want)) {
            std::ostringstream s;
            s << what << ": got " << got << ", expected " << want;
            failures.push_back(s.str());
        }
    }
};

std::ostream& operator<<(std::ostream& o, const std::optional<BigInt>& v) { return v ? o << *v : o << "undetermined"; }

using Pairs = std::set<std::pair<std::string, std::string>>;

json classify_json(int d)
{
    std::ostringstream out, err;
    const int code = cli::run({"--no-cache", "--format", "json", "classify", "--d", std::to_string(d)}, out, err);
    if (code != cli::Exact)
        throw Error("classify --d " + std::to_string(d) + " exited with " + std::to_string(code) + ": " + err.str());
    return json::parse(out.str());
}

Pairs projected(const json& doc)
{
    Pairs out;
    for (const auto& row : doc["results"]["rows"])
        out.emplace(row["space"], row["bundle"]);
    return out;
}

const json* find_row(const json& doc, const std::string& space, const std::string& bundle)
{
    for (const auto& row : doc["results"]["rows"])
        if (row["space"] == space && row["bundle"] == bundle)
            return &row;
    return nullptr;
}

// Reference rows in their usual numbering.
struct FourfoldRow {
    const char* no;
    const char* space;
    const char* bundle;
    long long h13;
};
const std::vector<FourfoldRow> kFourfolds = {
    {"1", "E6/P1", "O(1)^12", 102},        {"2", "E6/P2", "w1^2 + O(1)^5", 87}, {"2'", "E6/P2", "w1 + w6 + O(1)^5", 87},
    {"2''", "E6/P2", "w6^2 + O(1)^5", 87}, {"3", "E6/P3", "w1^3 + w6^3", 48},   {"4", "E6/P3", "w6^4 + O(1)", 72},
    {"5", "E7/P1", "w7^2 + O(1)^5", 87},   {"6", "F4/P1", "w4 + O(1)^5", 86},   {"1'", "F4/P4", "O(1)^11", 102},
    {"7", "F4/P4", "w1 + O(1)^4", 87},     {"8", "G2/P1", "O(5)", 356},         {"9", "G2/P2", "O(3)", 258},
};

struct ThreefoldRow {
    const char* space;
    const char* bundle;
    long long h12, chi;
};
const std::vector<ThreefoldRow> kThreefolds = {
    {"E6/P3", "w1 + w6^4", 31, -60},   {"G2/P1", "O(1) + O(4)", 89, -176}, {"G2/P1", "O(2) + O(3)", 73, -144},
    {"G2/P1", "w2(1)", 50, -98},       {"G2/P2", "O(1) + O(2)", 61, -120}, {"G2/P2", "w1(1)", 50, -98},
};

json g_d4, g_d3;

void criterion1(Check& c)
{
    const auto t0 = std::chrono::steady_clock::now();
    g_d4 = classify_json(4);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Pairs want;
    for (const auto& r : kFourfolds)
        want.emplace(r.space, r.bundle);
    c.equal(g_d4["results"]["rows"].size(), want.size(), "row count");
    const Pairs got = projected(g_d4);
    for (const auto& p : got)
        c.expect(want.count(p), "unexpected row " + p.first + " " + p.second);
    for (const auto& p : want)
        c.expect(got.count(p), "missing row " + p.first + " " + p.second);
    c.expect(secs < 600, "cold run took " + std::to_string(secs) + " s");
}

void criterion2(Check& c)
{
    g_d3 = classify_json(3);
    Pairs want;
    for (const auto& r : kThreefolds)
        want.emplace(r.space, r.bundle);
    c.equal(g_d3["results"]["rows"].size(), want.size(), "row count");
    c.expect(projected(g_d3) == want, "rows differ from the threefold table");
}

void criterion3(Check& c)
{
    for (const auto& r : kFourfolds) {
        const std::string tag = std::string("row ") + r.no + " " + r.space + " " + r.bundle;
        const json* row = find_row(g_d4, r.space, r.bundle);
        if (!row || !row->contains("hodge")) {
            c.expect(false, tag + ": no Hodge data");
            continue;
        }
        const auto& h = (*row)["hodge"];
        c.expect(h["h02"] == 0, tag + ": h02 = " + h["h02"].dump());
        c.expect(h["h11"] == 1, tag + ": h11 = " + h["h11"].dump());
        c.expect(h["h13"] == r.h13, tag + ": h13 = " + h["h13"].dump() + ", expected " + std::to_string(r.h13));
    }
}

void criterion4(Check& c)
{
    for (const auto& r : kThreefolds) {
        const std::string tag = std::string(r.space) + " " + r.bundle;
        const json* row = find_row(g_d3, r.space, r.bundle);
        if (!row || !row->contains("hodge")) {
            c.expect(false, tag + ": no Hodge data");
            continue;
        }
        const auto& h = (*row)["hodge"];
        c.expect(h["h12"] == r.h12, tag + ": h12 = " + h["h12"].dump());
        c.expect(h["chi"] == r.chi, tag + ": chi = " + h["chi"].dump());
    }
}

BigInt top_degree(const HomSpace& x, const FilteredBundle& b, int q)
{
    const auto t = b.gradeds.size() == 1 ? bundle_cohomology(x, b.gradeds[0]) : filtered_cohomology(x, b);
    if (!t.exact())
        throw Error("not exact");
    return t.dim(q);
}

void criterion5(Check& c)
{
    const auto g2p2 = HomSpace::parse("G2/P2");
    const auto g2p1 = HomSpace::parse("G2/P1");
    auto line = [](const HomSpace& x, int t) { return FilteredBundle::of(IrrDecomp::single(x.line(t))); };
    c.equal(top_degree(g2p2, line(g2p2, -6), 5), BigInt(273), "H^5(G2/P2, O(-6))");
    c.equal(top_degree(g2p2, line(g2p2, -9), 5), BigInt(3542), "H^5(G2/P2, O(-9))");
    c.equal(top_degree(g2p1, line(g2p1, -10), 5), BigInt(378), "H^5(G2/P1, O(-10))");
    // E is the rank-3 piece of the cotangent filtration on G2/P1; Ω(−5) has the same H^5
    const FilteredBundle e{{IrrDecomp::single(Weight{-8, 1}), IrrDecomp::single(Weight{-6, 0})}};
    c.equal(top_degree(g2p1, e, 5), BigInt(21), "H^5(G2/P1, E(-5))");
    c.equal(top_degree(g2p1, cotangent_bundle(g2p1).twist(g2p1, -5), 5), BigInt(21), "H^5(G2/P1, Omega(-5))");

    const ZeroLocus z2(g2p2, IrrDecomp::single(g2p2.line(3)));
    const auto r3 = restricted_cohomology(z2, line(g2p2, -3));
    const auto r6 = restricted_cohomology(z2, line(g2p2, -6));
    c.expect(r3.exact() && r6.exact(), "restricted tables exact");
    c.equal(r3.upper(4), BigInt(272), "H^4(Z, O(-3)|Z)");
    c.equal(r6.upper(4), BigInt(3269), "H^4(Z, O(-6)|Z)");
    const auto h2 = assemble(z2);
    c.equal(h2.diamond.at(2, 2), BigInt(1080), "h22 on (G2/P2, O(3))");
    c.equal(h2.euler, BigInt(1602), "chi on (G2/P2, O(3))");

    const ZeroLocus z1(g2p1, IrrDecomp::single(g2p1.line(5)));
    const auto h1 = assemble(z1);
    c.equal(h1.diamond.at(2, 2), BigInt(1472), "h22 on (G2/P1, O(5))");
    c.equal(h1.euler, BigInt(2190), "chi on (G2/P1, O(5))");
}

void criterion6(Check& c)
{
    const auto gr = HomSpace::parse("A5/P2");
    // S^3 of the dual tautological subbundle
    const ZeroLocus z(gr, IrrDecomp::single(Weight{3, 0, 0, 0, 0}));
    c.equal(z.dimension(), 4, "dim Z");
    c.equal(structure_cohomology(z).upper(2), BigInt(1), "h^2(Z, O_Z)");
    c.expect(structure_cohomology(z).exact(), "structure cohomology exact");
    const auto r = assemble(z);
    c.expect(r.hyperkahler == true, "hyperkahler verdict");
    const Weight w{3, -6, 0, 0, 0};
    c.expect(bwb(gr, w).singular, "3w1 - 6w2 + rho is singular");
    c.expect(gr.group().to_dominant_chamber(w + gr.group().rho()).singular, "chamber climb reports Singular");
}

void criterion7(Check& c)
{
    struct Row {
        const char* name;
        int dim, index;
        const char* embed;
    };
    const Row rows[] = {
        {"E6/P1", 16, 12, "26"},          {"E6/P2", 21, 11, "77"},       {"E6/P3", 25, 9, "350"},
        {"E6/P4", 29, 7, "2924"},         {"E7/P1", 33, 17, "132"},      {"E7/P2", 42, 14, "911"},
        {"E7/P3", 47, 11, "8644"},        {"E7/P4", 53, 8, "365749"},    {"E7/P5", 50, 10, "27663"},
        {"E7/P6", 42, 13, "1538"},        {"E7/P7", 27, 18, "55"},       {"E8/P1", 78, 23, "3874"},
        {"E8/P2", 92, 17, "147249"},      {"E8/P3", 98, 13, "6695999"},  {"E8/P4", 106, 9, "6899079263"},
        {"E8/P5", 104, 11, "146325269"},  {"E8/P6", 97, 14, "2450239"},  {"E8/P7", 83, 19, "30379"},
        {"E8/P8", 57, 29, "247"},         {"F4/P1", 15, 8, "51"},        {"F4/P2", 20, 5, "1273"},
        {"F4/P3", 20, 7, "272"},          {"F4/P4", 15, 11, "25"},       {"G2/P1", 5, 5, "6"},
        {"G2/P2", 5, 3, "13"},
    };
    for (const auto& r : rows) {
        const auto x = HomSpace::parse(r.name);
        c.equal(x.dimension(), r.dim, std::string("dim ") + r.name);
        c.equal(x.fano_index(), r.index, std::string("index ") + r.name);
        c.equal(x.minimal_embedding_dim(), BigInt(r.embed), std::string("embedding ") + r.name);
    }
    // the P6 and P5 of E6 mirror P1 and P3
    c.equal(HomSpace::parse("E6/P6").minimal_embedding_dim(), BigInt(26), "embedding E6/P6");
    c.equal(HomSpace::parse("E6/P5").minimal_embedding_dim(), BigInt(350), "embedding E6/P5");
}

void criterion8(Check& c)
{
    auto check = [&](const char* space, std::vector<int> w, int rank, int dex) {
        const auto x = HomSpace::parse(space);
        const Weight lambda(w);
        c.equal(x.rank(lambda), BigInt(rank), std::string("rank ") + space + " " + to_string(lambda));
        c.equal(x.dex(lambda), dex, std::string("dex ") + space + " " + to_string(lambda));
    };
    check("E6/P4", {1, 0, 0, 0, 0, 0}, 3, 1);
    check("E6/P4", {0, 1, 0, 0, 0, 0}, 2, 1);
    check("E6/P4", {0, 0, 1, 0, 0, 0}, 3, 2);
    check("E6/P4", {0, 0, 0, 0, 1, 0}, 3, 2);
    check("E6/P4", {0, 0, 0, 0, 0, 1}, 3, 1);
    check("E6/P4", {1, 1, 0, 0, 0, 0}, 6, 5);
    check("E6/P4", {0, 1, 1, 0, 0, 0}, 6, 7);
    check("E7/P2", {1, 0, 0, 0, 0, 0, 0}, 7, 4);
    check("E7/P2", {0, 0, 1, 0, 0, 0, 0}, 21, 24);
    check("E7/P2", {0, 0, 0, 1, 0, 0, 0}, 35, 60);
    check("E7/P2", {0, 0, 0, 0, 1, 0, 0}, 35, 45);
    check("E7/P2", {0, 0, 0, 0, 0, 1, 0}, 21, 18);
    check("E7/P2", {0, 0, 0, 0, 0, 0, 1}, 7, 3);
    check("E7/P2", {2, 0, 0, 0, 0, 0, 0}, 28, 32);
    check("E7/P2", {0, 0, 0, 0, 0, 0, 2}, 28, 24);
    check("E6/P2", {1, 0, 0, 0, 0, 0}, 6, 3);
    check("E6/P2", {0, 0, 1, 0, 0, 0}, 15, 15);
    check("E6/P2", {0, 0, 0, 0, 1, 0}, 15, 15);
    check("E6/P2", {0, 0, 0, 0, 0, 1}, 6, 3);
    check("E6/P3", {1, 0, 0, 0, 0, 0}, 2, 1);
    check("E6/P3", {2, 0, 0, 0, 0, 0}, 3, 3);
    check("E6/P3", {3, 0, 0, 0, 0, 0}, 4, 6);
    check("E6/P3", {0, 1, 0, 0, 0, 0}, 5, 3);
    check("E6/P3", {0, 0, 0, 0, 1, 0}, 10, 8);
    check("E6/P3", {0, 0, 0, 0, 0, 1}, 5, 2);
    check("E7/P1", {0, 0, 0, 0, 0, 0, 1}, 12, 6);
    check("F4/P1", {0, 0, 0, 1}, 6, 3);
    check("F4/P4", {1, 0, 0, 0}, 7, 7);
    check("F4/P4", {0, 0, 1, 0}, 8, 12);

    int checked = 0;
    for (const char* g : {"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "C2", "C3", "C4", "C5", "C6", "C7", "C8",
                          "D4", "D5", "D6", "D7", "D8"}) {
        const auto& rs = RootSystem::get(g);
        const int r = rs.rank();
        const int bound = r <= 4 ? 3 : (r <= 6 ? 2 : 1);
        for (int k = 1; k <= r; ++k) {
            const HomSpace x(rs, k);
            if (!has_dex_closed_form(x))
                continue;
            std::vector<int> v(r, 0);
            for (;;) {
                const Weight lambda(v);
                if (x.rank(lambda) <= 3000) {
                    c.expect(dex_closed_form(x, lambda) == Rational(x.dex(lambda)),
                             "closed form " + x.name() + " " + to_string(lambda));
                    ++checked;
                }
                int i = 0;
                while (i < r && v[i] == bound)
                    v[i++] = 0;
                if (i == r)
                    break;
                ++v[i];
            }
        }
    }
    c.expect(checked > 1000, "classical sweep too small");
}

Weight random_levi_dominant(const HomSpace& x, std::mt19937& rng, int bound)
{
    std::uniform_int_distribution<int> coord(0, bound), twist(-3 * bound - 6, bound);
    Weight w(x.group().rank());
    for (int i = 1; i <= x.group().rank(); ++i)
        w[i - 1] = (i == x.k()) ? twist(rng) : coord(rng);
    return w;
}

Character subsets_character(const Character& ch, int k, int rank)
{
    std::vector<Weight> ws;
    for (const auto& [w, m] : ch.sorted())
        for (BigInt i = 0; i < m; ++i)
            ws.push_back(w);
    Character out;
    std::function<void(std::size_t, int, Weight)> rec = [&](std::size_t start, int left, Weight acc) {
        if (left == 0) {
            out.add(acc, 1);
            return;
        }
        for (std::size_t i = start; i + left <= ws.size(); ++i)
            rec(i + 1, left - 1, acc + ws[i]);
    };
    rec(0, k, Weight(rank));
    return out;
}

void criterion9(Check& c)
{
    // Serre duality: H^q(λ) ≅ H^{n−q}(λ* ⊗ K)^*
    std::mt19937 rng(2024);
    for (const char* name : {"G2/P1", "G2/P2", "F4/P1", "F4/P3", "E6/P2", "E6/P3", "E7/P1", "A4/P2", "C3/P1", "D5/P5"}) {
        const auto x = HomSpace::parse(name);
        const int n = x.dimension();
        for (int i = 0; i < 30; ++i) {
            const Weight w = random_levi_dominant(x, rng, 3);
            const Weight d = dual_highest_weight(x.levi(), w) + x.line(-x.fano_index());
            const auto a = bundle_cohomology(x, IrrDecomp::single(w));
            const auto b = bundle_cohomology(x, IrrDecomp::single(d));
            for (int q = 0; q <= n; ++q)
                c.expect(a.dim(q) == b.dim(n - q), std::string("Serre ") + name + " " + to_string(w));
        }
    }
    // Freudenthal multiplicities sum to the Weyl dimension
    for (const char* name : {"A4", "B3", "C3", "D4", "G2", "F4", "E6", "E7"}) {
        const auto ctx = ReductiveContext::full(RootSystem::get(name));
        const int r = ctx.ambient().rank();
        for (int i = 1; i <= r; ++i) {
            Weight w(r);
            w[i - 1] = 1;
            if (weyl_dim(ctx, w) <= 3000)
                c.expect(weight_multiplicities(ctx, w)->total() == weyl_dim(ctx, w),
                         std::string("Freudenthal ") + name + " w" + std::to_string(i));
        }
    }
    // Λ-ring: Adams-built exterior powers re-expand to subset characters
    for (const auto& [space, rep] : std::vector<std::pair<const char*, IrrDecomp>>{
             {"F4/P4", IrrDecomp::single(Weight{1, 0, 0, 0})},
             {"E6/P3", IrrDecomp::single(Weight{0, 0, 0, 0, 0, 1})},
             {"G2/P1", IrrDecomp::single(Weight{-3, 1})},
             {"A5/P2", IrrDecomp::single(Weight{3, 0, 0, 0, 0})},
         }) {
        const auto x = HomSpace::parse(space);
        const auto ch = character_of(x.levi(), rep);
        for (int k = 0; k <= 4 && BigInt(k) <= ch.total(); ++k)
            c.expect(exterior_power(x.levi(), rep, k) ==
                         decompose(x.levi(), subsets_character(ch, k, x.group().rank())),
                     std::string("Lambda^") + std::to_string(k) + " on " + space);
    }
    // exactness certificates on the worked G2 inputs
    for (const auto& [space, twists] : std::vector<std::pair<const char*, std::vector<int>>>{
             {"G2/P2", {0, -3, -6}}, {"G2/P1", {0, -5, -10}}}) {
        const auto x = HomSpace::parse(space);
        for (int t : twists)
            c.expect(filtered_cohomology(x, cotangent_bundle(x).twist(x, t)).exact(),
                     std::string("Omega(") + std::to_string(t) + ") on " + space + " exact");
        const ZeroLocus z(x, IrrDecomp::single(x.line(x.fano_index())));
        c.expect(structure_cohomology(z).exact(), std::string("O_Z on ") + space + " exact");
        c.expect(restricted_cohomology(z, cotangent_bundle(x)).exact(), std::string("Omega|Z on ") + space + " exact");
    }
    // diamond symmetry and χ consistency on every classified row
    for (const json* doc : {&g_d4, &g_d3})
        for (const auto& row : (*doc)["results"]["rows"]) {
            if (!row.contains("hodge"))
                continue;
            const auto& h = row["hodge"];
            const int d = h["d"];
            const auto& m = h["diamond"];
            long long chi = 0;
            for (int p = 0; p <= d; ++p)
                for (int q = 0; q <= d; ++q) {
                    c.expect(m[p][q] == m[q][p] && m[p][q] == m[d - p][d - q],
                             "diamond symmetry " + row["space"].get<std::string>() + " " + row["bundle"].get<std::string>());
                    chi += ((p + q) % 2 ? -1 : 1) * m[p][q].get<long long>();
                }
            c.expect(h["chi"] == chi, "chi sum " + row["bundle"].get<std::string>());
            const long long h11 = m[1][1], h12 = m[1][2];
            if (d == 3)
                c.expect(chi == 2 * (h11 - h12), "threefold chi " + row["bundle"].get<std::string>());
            else
                c.expect(chi == 6 * (8 + h11 + m[1][3].get<long long>() - h12), "fourfold chi " + row["bundle"].get<std::string>());
        }
    // ratio pruning vs exhaustive enumeration
    for (const auto& x : exceptional_spaces()) {
        const char f = x.group().spec().family;
        if (f != 'F' && f != 'G')
            continue;
        for (int d : {3, 4}) {
            auto fast = enumerate_candidates(x, d);
            auto slow = enumerate_candidates(x, d, {true, false});
            std::set<std::string> a, b;
            for (const auto& p : fast.candidates)
                a.insert(format_bundle(x, p.bundle));
            for (const auto& p : slow.candidates)
                b.insert(format_bundle(x, p.bundle));
            c.expect(a == b, "ratio prune " + x.name() + " d=" + std::to_string(d));
        }
    }
    const auto f4p2 = HomSpace::parse("F4/P2");
    std::set<std::string> pruned, brute;
    for (const auto& s : admissible_summands(f4p2, 16, 5))
        pruned.insert(to_string(s.weight));
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 5; ++b)
            for (int e = 0; e <= 4; ++e)
                for (int g = 0; g <= 4; ++g) {
                    const Weight w{a, b, e, g};
                    if (!w.is_zero() && f4p2.rank(w) <= 16 && f4p2.dex(w) <= 5)
                        brute.insert(to_string(w));
                }
    c.expect(pruned == brute, "summand recursion vs box on F4/P2");
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, void (*)(Check&)>> criteria = {
        {"classification d=4 matches the 12 reference rows", criterion1},
        {"classification d=3 matches the 6 reference rows", criterion2},
        {"fourfold Hodge numbers h02, h11, h13 per row", criterion3},
        {"threefold h12 and Euler characteristic per row", criterion4},
        {"worked G2 cohomology checkpoints", criterion5},
        {"Beauville-Donagi regression on Gr(2,6)", criterion6},
        {"dimension, index and embedding of the 25 spaces", criterion7},
        {"dex tables and closed-form sweep", criterion8},
        {"property suites", criterion9},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        const bool ok = c.failures.empty();
        failed += !ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << "\n";
        for (std::size_t j = 0; j < c.failures.size() && j < 10; ++j)
            std::cout << "        " << c.failures[j] << "\n";
        if (c.failures.size() > 10)
            std::cout << "        ... " << c.failures.size() - 10 << " more\n";
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
