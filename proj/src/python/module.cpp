#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bwbforge/bundle_expr.hpp"
#include "bwbforge/classify.hpp"
#include "bwbforge/cli.hpp"
#include "bwbforge/version.hpp"

namespace py = pybind11;
using namespace bwbforge;

namespace {

// Python ints are unbounded, so BigInt goes through its decimal text.
py::object to_py(const BigInt& v) { return py::reinterpret_steal<py::object>(PyLong_FromString(v.str().c_str(), nullptr, 10)); }

py::object to_py(const std::optional<BigInt>& v) { return v ? to_py(*v) : py::none(); }

py::dict table_dict(const CohomologyTable& t)
{
    py::list h, lo, hi;
    for (int q = 0; q <= t.top(); ++q) {
        lo.append(to_py(t.lower(q)));
        hi.append(to_py(t.upper(q)));
        h.append(t.lower(q) == t.upper(q) ? to_py(t.lower(q)) : py::none());
    }
    py::dict d;
    d["exact"] = t.exact();
    d["h"] = h;
    d["lower"] = lo;
    d["upper"] = hi;
    return d;
}

py::dict hodge_dict(const HodgeResult& r)
{
    const int d = r.diamond.dimension();
    py::list rows;
    for (int p = 0; p <= d; ++p) {
        py::list row;
        for (int q = 0; q <= d; ++q)
            row.append(to_py(r.diamond.at(p, q)));
        rows.append(row);
    }
    py::dict out;
    out["d"] = d;
    out["diamond"] = rows;
    out["chi"] = to_py(r.euler);
    out["hyperkahler"] = r.hyperkahler ? py::object(py::bool_(*r.hyperkahler)) : py::none();
    out["complete"] = r.diamond.complete();
    out["ambiguities"] = r.report.ambiguities;
    return out;
}

FilteredBundle bundle_arg(const HomSpace& x, const std::string& expr)
{
    if (expr == "Omega")
        return cotangent_bundle(x);
    return FilteredBundle::of(parse_bundle(x, expr));
}

}  // namespace

PYBIND11_MODULE(_bwbforge, m)
{
    m.doc() = "Borel-Weil-Bott cohomology and Hodge numbers of zero loci in G/P";
    m.attr("__version__") = kEngineVersion;

    py::register_exception<Error>(m, "BwbforgeError", PyExc_ValueError);

    m.def("space_info", [](const std::string& space) {
        const auto x = HomSpace::parse(space);
        py::dict d;
        d["name"] = x.name();
        d["dim"] = x.dimension();
        d["index"] = x.fano_index();
        d["embed"] = to_py(x.minimal_embedding_dim());
        return d;
    }, py::arg("space"));

    m.def("rank_dex", [](const std::string& space, const std::string& expr) {
        const auto x = HomSpace::parse(space);
        const auto f = parse_bundle(x, expr);
        return py::make_tuple(to_py(x.rank(f)), x.dex(f));
    }, py::arg("space"), py::arg("bundle"));

    m.def("normalize_bundle", [](const std::string& space, const std::string& expr) {
        const auto x = HomSpace::parse(space);
        return format_bundle(x, parse_bundle(x, expr));
    }, py::arg("space"), py::arg("bundle"));

    m.def("cohomology", [](const std::string& space, const std::string& expr) {
        const auto x = HomSpace::parse(space);
        const auto b = bundle_arg(x, expr);
        py::gil_scoped_release release;
        auto t = b.gradeds.size() == 1 ? bundle_cohomology(x, b.gradeds[0]) : filtered_cohomology(x, b);
        py::gil_scoped_acquire acquire;
        return table_dict(t);
    }, py::arg("space"), py::arg("bundle"), "H^q(G/P, F); bundle may be 'Omega'.");

    m.def("restricted_cohomology", [](const std::string& space, const std::string& zero_of, const std::string& expr) {
        const auto x = HomSpace::parse(space);
        const ZeroLocus z(x, parse_bundle(x, zero_of));
        const auto b = bundle_arg(x, expr);
        std::optional<CohomologyTable> t;
        {
            py::gil_scoped_release release;
            t = restricted_cohomology(z, b);
        }
        return table_dict(*t);
    }, py::arg("space"), py::arg("zero_of"), py::arg("bundle"));

    m.def("hodge", [](const std::string& space, const std::string& expr) {
        const auto x = HomSpace::parse(space);
        const ZeroLocus z(x, parse_bundle(x, expr));
        std::optional<HodgeResult> r;
        {
            py::gil_scoped_release release;
            r = assemble(z);
        }
        return hodge_dict(*r);
    }, py::arg("space"), py::arg("bundle"));

    m.def("classify", [](int d, bool hodge, bool use_exceptions) {
        ClassifyOptions opt;
        opt.hodge = hodge;
        opt.enumeration.use_exceptions = use_exceptions;
        std::optional<ClassificationReport> rep;
        {
            py::gil_scoped_release release;
            rep = classify(d, opt);
        }
        py::list rows;
        for (const auto& row : rep->rows) {
            py::dict r;
            r["space"] = row.pair.space.name();
            r["bundle"] = format_bundle(row.pair.space, row.pair.bundle);
            r["hodge"] = row.hodge ? py::object(hodge_dict(*row.hodge)) : py::none();
            rows.append(r);
        }
        return rows;
    }, py::arg("d"), py::arg("hodge") = true, py::arg("use_exceptions") = true);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
            py::gil_scoped_release release;
            code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs the command line front end; returns (exit code, stdout, stderr).");
}
