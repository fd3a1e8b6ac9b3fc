#include "bwbforge/hodge.hpp"

#include <future>

namespace bwbforge {

HodgeDiamond::HodgeDiamond(int d)
    : d_(d), h_(d + 1, std::vector<std::optional<BigInt>>(d + 1)),
      flags_(d + 1, std::vector<Flag>(d + 1, Flag::Ambiguous))
{
}

void HodgeDiamond::set(int p, int q, std::optional<BigInt> v, Flag f)
{
    h_.at(p).at(q) = std::move(v);
    flags_.at(p).at(q) = f;
}

bool HodgeDiamond::complete() const
{
    for (const auto& row : h_)
        for (const auto& c : row)
            if (!c)
                return false;
    return true;
}

std::optional<BigInt> euler_characteristic(const HodgeDiamond& diamond)
{
    BigInt chi = 0;
    for (int p = 0; p <= diamond.dimension(); ++p)
        for (int q = 0; q <= diamond.dimension(); ++q) {
            auto v = diamond.at(p, q);
            if (!v)
                return std::nullopt;
            chi += ((p + q) % 2 == 0) ? *v : BigInt(-*v);
        }
    return chi;
}

namespace {

struct Term {
    std::string label;
    SpectralBook book;
    std::map<int, std::vector<CohomologyEntry>> contributions;
};

Term koszul_term(const ZeroLocus& z, std::string label, const FilteredBundle& e)
{
    Term t{std::move(label), {}, {}};
    t.book = koszul_book(z, e, &t.contributions);
    return t;
}

std::string cell(int p, int q) { return "h" + std::to_string(p) + std::to_string(q); }

}  // namespace

HodgeResult assemble(const ZeroLocus& z)
{
    const int d = z.dimension();
    const HomSpace& x = z.space();
    const ReductiveContext& levi = x.levi();
    const IrrDecomp fdual = z.dual_bundle();
    z.wedge_duals();

    std::vector<std::future<Term>> jobs;
    auto launch = [&](std::string label, auto make) {
        jobs.push_back(std::async(std::launch::async, [&z, label = std::move(label), make] {
            return koszul_term(z, label, make());
        }));
    };
    launch("O_Z", [&] { return FilteredBundle::of(IrrDecomp::single(x.group().zero())); });
    launch("F*|Z", [&] { return FilteredBundle::of(fdual); });
    launch("Omega_X|Z", [&] { return cotangent_bundle(x); });
    if (d == 4) {
        launch("S2F*|Z", [&] { return FilteredBundle::of(symmetric_power(levi, fdual, 2)); });
        launch("(F*@Omega_X)|Z", [&] { return cotangent_bundle(x).tensor(levi, fdual); });
        launch("Omega2_X|Z", [&] { return cotangent_square(x); });
    }
    std::vector<Term> terms;
    for (auto& j : jobs)
        terms.push_back(j.get());

    LinearSolver solver;
    std::vector<std::vector<LinearSolver::Var>> h(d + 1);
    for (int p = 0; p <= d; ++p)
        for (int q = 0; q <= d; ++q)
            h[p].push_back(solver.add_var(cell(p, q)));
    for (int p = 0; p <= d; ++p)
        for (int q = 0; q <= d; ++q) {
            if (q != p)
                solver.add_equal(h[p][q], h[q][p], "complex conjugation");
            if (d - p != p || d - q != q)
                solver.add_equal(h[p][q], h[d - p][d - q], "Serre duality");
        }

    auto bound_row = [&](int p) {
        std::vector<std::optional<LinearSolver::Var>> b;
        for (int q = 0; q <= d; ++q)
            b.emplace_back(h[p][q]);
        return b;
    };
    std::vector<std::vector<LinearSolver::Var>> vars;
    for (std::size_t i = 0; i < terms.size(); ++i)
        vars.push_back(add_spectral(solver, terms[i].book, 0, d, terms[i].label,
                                    i == 0 ? bound_row(0) : std::vector<std::optional<LinearSolver::Var>>{}));

    HodgeResult out{HodgeDiamond(d), {}, std::nullopt, std::nullopt};
    auto& rep = out.report;
    rep.sequences.push_back("Koszul resolution of O_Z tensored with each restricted bundle");
    if (d >= 1) {
        add_long_exact(solver, vars[1], vars[2], h[1], "conormal");
        rep.sequences.push_back("0 -> F*|Z -> Omega_X|Z -> Omega_Z -> 0");
    }
    if (d == 4) {
        std::vector<LinearSolver::Var> k;
        for (int q = 0; q <= d; ++q)
            k.push_back(solver.add_var("K h" + std::to_string(q)));
        add_long_exact(solver, vars[3], vars[4], k, "S2 conormal (left)");
        add_long_exact(solver, k, vars[5], h[2], "S2 conormal (right)");
        rep.sequences.push_back("0 -> S2F*|Z -> (F*@Omega_X)|Z -> K -> 0");
        rep.sequences.push_back("0 -> K -> Omega2_X|Z -> Omega2_Z -> 0");
    }
    solver.solve();
    rep.steps = solver.log();

    for (auto& t : terms) {
        CohomologyTable table = resolve_book(t.book, d, t.contributions);
        rep.terms.push_back({t.label, std::move(table)});
    }

    const int computed_rows = (d == 4) ? 2 : 1;
    for (int p = 0; p <= d; ++p)
        for (int q = 0; q <= d; ++q) {
            auto v = solver.value(h[p][q]);
            HodgeDiamond::Flag f = !v                       ? HodgeDiamond::Flag::Ambiguous
                                   : (p <= computed_rows)   ? HodgeDiamond::Flag::Computed
                                                            : HodgeDiamond::Flag::SymmetryForced;
            out.diamond.set(p, q, v, f);
            if (!v && p <= q && p + q <= d)
                rep.ambiguities.push_back(cell(p, q) + " not determined by the sequences");
        }
    out.euler = euler_characteristic(out.diamond);
    if (d != 4)
        out.hyperkahler = false;
    else if (auto v = out.diamond.at(0, 2))
        out.hyperkahler = (*v == 1);
    return out;
}

std::vector<std::optional<BigInt>> h0_row(const ZeroLocus& z)
{
    const CohomologyTable t = structure_cohomology(z);
    std::vector<std::optional<BigInt>> row;
    for (int q = 0; q <= z.dimension(); ++q)
        row.push_back(t.lower(q) == t.upper(q) ? std::optional<BigInt>(t.lower(q)) : std::nullopt);
    return row;
}

std::vector<std::optional<BigInt>> h1_row(const ZeroLocus& z)
{
    const HodgeResult r = assemble(z);
    std::vector<std::optional<BigInt>> row;
    for (int q = 0; q <= z.dimension(); ++q)
        row.push_back(z.dimension() >= 1 ? r.diamond.at(1, q) : std::nullopt);
    return row;
}

std::optional<BigInt> h22(const ZeroLocus& z)
{
    if (z.dimension() != 4)
        throw Error("h22 needs a fourfold, got dimension " + std::to_string(z.dimension()));
    return assemble(z).diamond.at(2, 2);
}

}  // namespace bwbforge
