#include "bwbforge/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <map>
#include <iostream>
#include <sstream>

#include "bwbforge/bundle_expr.hpp"
#include "bwbforge/cache.hpp"
#include "bwbforge/classify.hpp"
#include "bwbforge/version.hpp"

namespace bwbforge::cli {

namespace {

using json = nlohmann::ordered_json;

json big(const BigInt& v)
{
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();
}

std::string big_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

json weight_json(const Weight& w) { return w.to_vector(); }

struct Config {
    std::string format = "table";
    std::string cache_dir;
    bool no_cache = false;
    bool allow_bounds = false;
    bool verbose = false;
};

struct Outcome {
    json doc;
    bool exact = true;
};

// ---------- restricted-bundle tokens ----------

FilteredBundle filtered_from(const HomSpace& x, const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    for (const char* token : {"Omega2", "Omega"}) {
        const std::string t = token;
        if (s.rfind(t, 0) != 0)
            continue;
        std::string rest = s.substr(t.size());
        if (t == "Omega" && !rest.empty() && rest[0] == '2')
            continue;
        int twist = 0;
        if (!rest.empty()) {
            if (rest.front() != '(' || rest.back() != ')')
                throw ParseError("expected " + t + "(t)", t.size());
            try {
                std::size_t used = 0;
                twist = std::stoi(rest.substr(1, rest.size() - 2), &used);
                if (used != rest.size() - 2)
                    throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ParseError("bad twist in " + s, t.size() + 1);
            }
        }
        const FilteredBundle b = (t == "Omega") ? cotangent_bundle(x) : cotangent_square(x);
        return b.twist(x, twist);
    }
    return FilteredBundle::of(parse_bundle(x, text));
}

std::string canonical(const HomSpace& x, const std::string& expr)
{
    const FilteredBundle b = filtered_from(x, expr);
    std::string out;
    for (const auto& g : b.gradeds)
        out += serialize(g) + "|";
    return out;
}

json table_json(const CohomologyTable& t)
{
    json j;
    j["exact"] = t.exact();
    json h = json::array(), lo = json::array(), hi = json::array();
    for (int q = 0; q <= t.top(); ++q) {
        lo.push_back(big(t.lower(q)));
        hi.push_back(big(t.upper(q)));
        h.push_back(t.lower(q) == t.upper(q) ? big(t.lower(q)) : json(nullptr));
    }
    j["h"] = h;
    j["lower"] = lo;
    j["upper"] = hi;
    json entries = json::array();
    for (const auto& [q, es] : t.entries())
        for (const auto& e : es)
            entries.push_back({{"degree", q}, {"weight", weight_json(e.weight)},
                               {"multiplicity", big(e.multiplicity)}, {"dim", big(e.dim)}});
    j["entries"] = entries;
    return j;
}

json base_doc(const std::string& command, const std::string& space, const std::string& bundle)
{
    json d;
    d["command"] = command;
    d["space"] = space;
    d["bundle"] = bundle;
    d["results"] = json::object();
    d["status"] = "exact";
    d["citations"] = json::array();
    d["engine"] = kEngineVersion;
    return d;
}

// ---------- commands ----------

Outcome cmd_roots(const std::string& name)
{
    const RootSystem& g = RootSystem::get(name);
    json d = base_doc("roots", g.name(), "");
    auto& r = d["results"];
    r["rank"] = g.rank();
    r["cartan"] = g.cartan_matrix();
    r["positive_roots"] = g.positive_roots().size();
    r["highest_root"] = g.highest_root().to_vector();
    r["rho"] = weight_json(g.rho());
    json roots = json::array();
    for (const Root& a : g.positive_roots())
        roots.push_back({{"root", a.to_vector()}, {"weight", weight_json(g.to_weight(a))}});
    r["roots"] = roots;
    d["citations"] = {"Bourbaki labeling"};
    return {d, true};
}

Outcome cmd_dim(const std::string& space)
{
    const HomSpace x = HomSpace::parse(space);
    json d = base_doc("dim", x.name(), "");
    d["results"] = {{"dim", x.dimension()}, {"index", x.fano_index()}, {"embed", big(x.minimal_embedding_dim())}};
    d["citations"] = {"Weyl dimension formula", "K = O(-index) from the sum of roots of the unipotent radical"};
    return {d, true};
}

json summand_json(const HomSpace& x, const Weight& w, const BigInt& m)
{
    return {{"weight", weight_json(w)}, {"expr", format_summand(x, w)}, {"multiplicity", big(m)},
            {"rank", big(x.rank(w))}, {"dex", x.dex(w)}};
}

Outcome cmd_dex(const std::string& space, const std::string& expr)
{
    const HomSpace x = HomSpace::parse(space);
    const IrrDecomp f = parse_bundle(x, expr);
    json d = base_doc("dex", x.name(), format_bundle(x, f));
    json s = json::array();
    for (const auto& [w, m] : f.terms())
        s.push_back(summand_json(x, w, m));
    d["results"] = {{"summands", s}, {"rank", big(x.rank(f))}, {"dex", x.dex(f)}};
    d["citations"] = {"det E = O(dex), k-coordinate of the sum of weights"};
    return {d, true};
}

Outcome cmd_bwb(const std::string& space, const std::string& expr)
{
    const HomSpace x = HomSpace::parse(space);
    const IrrDecomp f = parse_bundle(x, expr);
    json d = base_doc("bwb", x.name(), format_bundle(x, f));
    json s = json::array();
    for (const auto& [w, m] : f.terms()) {
        const BwbResult r = bwb(x, w);
        json e = {{"weight", weight_json(w)}, {"expr", format_summand(x, w)}, {"multiplicity", big(m)},
                  {"shifted", weight_json(w + x.group().rho())}, {"singular", r.singular}};
        if (!r.singular) {
            e["degree"] = r.degree;
            e["module"] = weight_json(r.weight);
            e["dim"] = big(r.dim);
            e["word"] = r.word.word;
        }
        s.push_back(e);
    }
    d["results"] = {{"summands", s}, {"cohomology", table_json(bundle_cohomology(x, f))}};
    d["citations"] = {"Borel-Weil-Bott"};
    return {d, true};
}

Outcome cmd_ext(const std::string& space, const std::string& expr, int p)
{
    const HomSpace x = HomSpace::parse(space);
    const IrrDecomp f = parse_bundle(x, expr);
    json d = base_doc("ext", x.name(), format_bundle(x, f));
    const IrrDecomp w = exterior_power(x.levi(), f, p);
    json s = json::array();
    for (const auto& [wt, m] : w.terms())
        s.push_back(summand_json(x, wt, m));
    d["results"] = {{"p", p}, {"rank", big(x.rank(w))}, {"dex", w.empty() ? 0 : x.dex(w)}, {"summands", s}};
    d["citations"] = {"Adams operations / Newton identities"};
    return {d, true};
}

Outcome cmd_cohomology(const std::string& space, const std::string& expr, const std::string& restrict_to)
{
    const HomSpace x = HomSpace::parse(space);
    if (restrict_to.empty()) {
        const FilteredBundle b = filtered_from(x, expr);
        const CohomologyTable t = (b.gradeds.size() == 1) ? bundle_cohomology(x, b.gradeds[0]) : filtered_cohomology(x, b);
        json d = base_doc("cohomology", x.name(), expr);
        d["results"] = {{"on", x.name()}, {"filtration_length", b.gradeds.size()}, {"cohomology", table_json(t)}};
        d["citations"] = {"Borel-Weil-Bott", "long exact sequences of the filtration"};
        const bool exact = t.exact();
        if (!exact)
            d["status"] = "ambiguous";
        return {d, exact};
    }
    const ZeroLocus z(x, parse_bundle(x, expr));
    const FilteredBundle e = filtered_from(x, restrict_to);
    const CohomologyTable t = restricted_cohomology(z, e);
    json d = base_doc("cohomology", x.name(), format_bundle(x, z.bundle()));
    d["results"] = {{"on", "Z"}, {"zero_locus_dim", z.dimension()}, {"restricted", restrict_to},
                    {"cohomology", table_json(t)}};
    d["citations"] = {"Koszul resolution", "Borel-Weil-Bott", "hypercohomology spectral sequence (degree bookkeeping)"};
    if (!t.exact())
        d["status"] = "ambiguous";
    return {d, t.exact()};
}

json diamond_json(const HodgeResult& r)
{
    const auto& h = r.diamond;
    const int d = h.dimension();
    json rows = json::array(), flags = json::array();
    for (int p = 0; p <= d; ++p) {
        json row = json::array(), fr = json::array();
        for (int q = 0; q <= d; ++q) {
            auto v = h.at(p, q);
            row.push_back(v ? big(*v) : json(nullptr));
            const auto f = h.flag(p, q);
            fr.push_back(f == HodgeDiamond::Flag::Computed         ? "computed"
                         : f == HodgeDiamond::Flag::SymmetryForced ? "symmetry"
                                                                   : "ambiguous");
        }
        rows.push_back(row);
        flags.push_back(fr);
    }
    json j;
    j["d"] = d;
    auto cell = [&](int p, int q) -> json {
        if (p > d || q > d)
            return nullptr;
        auto v = h.at(p, q);
        return v ? big(*v) : json(nullptr);
    };
    j["h01"] = cell(0, 1);
    j["h02"] = cell(0, 2);
    j["h11"] = cell(1, 1);
    j["h12"] = cell(1, 2);
    if (d >= 4) {
        j["h13"] = cell(1, 3);
        j["h22"] = cell(2, 2);
    }
    j["chi"] = r.euler ? big(*r.euler) : json(nullptr);
    j["hyperkahler"] = r.hyperkahler ? json(*r.hyperkahler) : json(nullptr);
    j["diamond"] = rows;
    j["flags"] = flags;
    json terms = json::array();
    for (const auto& t : r.report.terms)
        terms.push_back({{"term", t.label}, {"cohomology", table_json(t.table)}});
    j["chase"] = {{"sequences", r.report.sequences},
                  {"ambiguities", r.report.ambiguities},
                  {"terms", terms},
                  {"steps", r.report.steps}};
    return j;
}

Outcome cmd_hodge(const std::string& space, const std::string& expr, int d)
{
    const HomSpace x = HomSpace::parse(space);
    const ZeroLocus z(x, parse_bundle(x, expr));
    if (z.dimension() != d)
        throw Error("the zero locus of " + format_bundle(x, z.bundle()) + " on " + x.name() + " has dimension " +
                    std::to_string(z.dimension()) + ", not " + std::to_string(d));
    const HodgeResult r = assemble(z);
    json doc = base_doc("hodge", x.name(), format_bundle(x, z.bundle()));
    doc["results"] = diamond_json(r);
    doc["citations"] = {"Koszul resolution", "Borel-Weil-Bott", "conormal sequence and its second exterior power",
                        "Hodge symmetry and Serre duality"};
    const bool exact = r.diamond.complete();
    if (!exact)
        doc["status"] = "ambiguous";
    return {doc, exact};
}

Outcome cmd_classify(int d, const std::string& family, bool no_exceptions, bool no_hodge)
{
    if (d != 3 && d != 4)
        throw Error("classify supports --d 3 or --d 4");
    ClassifyOptions opt;
    opt.family = (family == "all") ? Family::All : Family::Exceptional;
    opt.enumeration.use_exceptions = !no_exceptions;
    opt.hodge = !no_hodge;
    const ClassificationReport rep = classify(d, opt);
    json doc = base_doc("classify", family, "");
    json rows = json::array();
    bool exact = true;
    std::map<std::string, std::size_t> orbit_no;
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
        orbit_no.emplace(rep.rows[i].pair.orbit, i + 1);
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& row = rep.rows[i];
        const HomSpace& x = row.pair.space;
        json j = {{"no", i + 1},
                  {"space", x.name()},
                  {"dim", x.dimension()},
                  {"index", x.fano_index()},
                  {"bundle", format_bundle(x, row.pair.bundle)},
                  {"rank", big(x.rank(row.pair.bundle))},
                  {"dex", x.dex(row.pair.bundle)},
                  {"same_as", orbit_no.at(row.pair.orbit)},
                  {"verified_family", row.verified_family}};
        if (row.hodge) {
            j["hodge"] = diamond_json(*row.hodge);
            j["hodge"].erase("chase");
            exact = exact && row.hodge->diamond.complete();
        }
        rows.push_back(j);
    }
    json dedup = json::array();
    for (std::size_t i : rep.deduplicated)
        dedup.push_back(i + 1);
    json excluded = json::array();
    for (const auto& c : rep.excluded)
        excluded.push_back({{"space", c.space.name()}, {"bundle", format_bundle(c.space, c.bundle)}, {"reasons", c.notes}});
    json rejected = json::array();
    for (const auto& [s, why] : rep.rejected)
        rejected.push_back({{"space", s}, {"reason", why}});
    doc["results"] = {{"d", d},           {"rows", rows},         {"deduplicated", dedup},
                      {"excluded", excluded}, {"rejected", rejected}};
    doc["citations"] = {"rank(F) = dim - d and dex(F) = index", "ratio bound dex/rank <= index/(dim - d)",
                        "E6 diagram automorphism", "curated nowhere-vanishing exceptions"};
    if (!exact)
        doc["status"] = "ambiguous";
    return {doc, exact};
}

// ---------- printers ----------

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::string cell_text(const json& v) { return v.is_null() ? "?" : big_text(v); }

std::string vec_text(const json& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + v[i].dump();
    return s + "]";
}

void print_cohomology_table(std::ostream& out, const json& c)
{
    for (std::size_t q = 0; q < c["h"].size(); ++q) {
        if (!c["h"][q].is_null())
            out << "H^" << q << " = " << big_text(c["h"][q]) << "\n";
        else
            out << "H^" << q << " in [" << big_text(c["lower"][q]) << ", " << big_text(c["upper"][q]) << "]\n";
    }
}

void print_diamond(std::ostream& out, const json& h)
{
    const int d = h["d"].get<int>();
    // cell (p, q) sits on row p + q, slot q - p + d
    std::size_t w = 1;
    for (int p = 0; p <= d; ++p)
        for (int q = 0; q <= d; ++q)
            w = std::max(w, cell_text(h["diamond"][p][q]).size());
    for (int s = 0; s <= 2 * d; ++s) {
        std::string line((2 * d + 1) * (w + 1), ' ');
        for (int p = std::max(0, s - d); p <= std::min(s, d); ++p) {
            const std::string c = cell_text(h["diamond"][p][s - p]);
            const std::size_t at = static_cast<std::size_t>(s - 2 * p + d) * (w + 1) + (w - c.size() + 1) / 2;
            line.replace(at, c.size(), c);
        }
        line.erase(line.find_last_not_of(' ') + 1);
        out << line << "\n";
    }
}

void print_table(std::ostream& out, const json& doc, bool verbose)
{
    const std::string cmd = doc["command"];
    const json& r = doc["results"];
    if (cmd == "roots") {
        out << doc["space"].get<std::string>() << ": rank " << r["rank"] << ", " << r["positive_roots"]
            << " positive roots, highest root " << vec_text(r["highest_root"]) << ", rho " << vec_text(r["rho"]) << "\n";
        out << "Cartan matrix (column j = alpha_j):\n";
        for (const auto& row : r["cartan"]) {
            for (const auto& v : row)
                out << std::setw(4) << v.get<int>();
            out << "\n";
        }
        for (const auto& a : r["roots"])
            out << vec_text(a["root"]) << "  " << vec_text(a["weight"]) << "\n";
    } else if (cmd == "dim") {
        out << "dim=" << r["dim"] << " index=" << r["index"] << " embed=P^" << big_text(r["embed"]) << "\n";
    } else if (cmd == "dex" || cmd == "ext") {
        if (cmd == "ext")
            out << "Lambda^" << r["p"] << " of " << doc["bundle"].get<std::string>() << ":\n";
        for (const auto& s : r["summands"]) {
            out << s["expr"].get<std::string>();
            if (s["multiplicity"] != 1)
                out << "^" << big_text(s["multiplicity"]);
            out << "  weight=" << vec_text(s["weight"]) << " rank=" << big_text(s["rank"]) << " dex=" << s["dex"] << "\n";
        }
        out << "total rank=" << big_text(r["rank"]) << " dex=" << r["dex"] << "\n";
    } else if (cmd == "bwb") {
        for (const auto& s : r["summands"]) {
            out << s["expr"].get<std::string>() << " " << vec_text(s["weight"]) << ": lambda+rho=" << vec_text(s["shifted"]);
            if (s["singular"])
                out << " Singular, all cohomology vanishes\n";
            else
                out << " regular, H^" << s["degree"] << " = V(" << vec_text(s["module"]) << ")^*, dim "
                    << big_text(s["dim"]) << "\n";
        }
    } else if (cmd == "cohomology") {
        if (r["on"] == "Z")
            out << "Z = zero locus of " << doc["bundle"].get<std::string>() << " on " << doc["space"].get<std::string>()
                << " (dim " << r["zero_locus_dim"] << "), E = " << r["restricted"].get<std::string>() << "\n";
        print_cohomology_table(out, r["cohomology"]);
        if (verbose)
            for (const auto& e : r["cohomology"]["entries"])
                out << "  E1 degree " << e["degree"] << ": V(" << vec_text(e["weight"]) << ") x"
                    << big_text(e["multiplicity"]) << " dim " << big_text(e["dim"]) << "\n";
    } else if (cmd == "hodge") {
        out << "Z = zero locus of " << doc["bundle"].get<std::string>() << " on " << doc["space"].get<std::string>()
            << ", d = " << r["d"] << "\n";
        print_diamond(out, r);
        const int d = r["d"];
        if (d >= 4)
            out << "h02=" << cell_text(r["h02"]) << " h11=" << cell_text(r["h11"]) << " h12=" << cell_text(r["h12"])
                << " h13=" << cell_text(r["h13"]) << " h22=" << cell_text(r["h22"]);
        else
            out << "h11=" << cell_text(r["h11"]) << " h12=" << cell_text(r["h12"]);
        out << " chi=" << cell_text(r["chi"]) << "\n";
        if (d == 4)
            out << "hyperkahler: "
                << (r["hyperkahler"].is_null() ? "undetermined" : r["hyperkahler"].get<bool>() ? "yes" : "no") << "\n";
        for (const auto& a : r["chase"]["ambiguities"])
            out << "ambiguous: " << a.get<std::string>() << "\n";
        if (verbose) {
            for (const auto& s : r["chase"]["sequences"])
                out << "sequence: " << s.get<std::string>() << "\n";
            for (const auto& t : r["chase"]["terms"]) {
                out << "term " << t["term"].get<std::string>() << ":";
                const auto& c = t["cohomology"];
                for (std::size_t q = 0; q < c["h"].size(); ++q)
                    out << " " << (c["h"][q].is_null() ? "[" + big_text(c["lower"][q]) + "," + big_text(c["upper"][q]) + "]"
                                                        : big_text(c["h"][q]));
                out << "\n";
            }
            for (const auto& s : r["chase"]["steps"])
                out << "  " << s.get<std::string>() << "\n";
        }
    } else if (cmd == "classify") {
        const int d = r["d"];
        std::vector<std::vector<std::string>> table;
        if (d == 4)
            table.push_back({"No.", "G/P", "dim", "index", "F", "h02", "h11", "h13"});
        else
            table.push_back({"No.", "G/P", "dim", "index", "F", "h01,h02", "h00,h03,h11", "h12", "chi"});
        for (const auto& row : r["rows"]) {
            std::vector<std::string> line = {std::to_string(row["no"].get<int>()), row["space"], row["dim"].dump(),
                                             row["index"].dump(), row["bundle"]};
            const bool has = row.contains("hodge");
            auto get = [&](const char* key) { return has ? cell_text(row["hodge"][key]) : std::string("-"); };
            // equal cells collapse to one value, as in the printed tables
            auto joint = [&](std::vector<std::pair<int, int>> cells) {
                if (!has)
                    return std::string("-");
                std::vector<std::string> v;
                for (auto [p, q] : cells)
                    v.push_back(cell_text(row["hodge"]["diamond"][p][q]));
                if (std::all_of(v.begin(), v.end(), [&](const std::string& e) { return e == v[0]; }))
                    return v[0];
                std::string s;
                for (const auto& e : v)
                    s += (s.empty() ? "" : ",") + e;
                return s;
            };
            if (d == 4)
                line.insert(line.end(), {get("h02"), get("h11"), get("h13")});
            else
                line.insert(line.end(), {joint({{0, 1}, {0, 2}}), joint({{0, 0}, {0, 3}, {1, 1}}), get("h12"), get("chi")});
            if (!row["verified_family"].get<bool>())
                line.back() += "  (classical ambient, unverified)";
            table.push_back(line);
        }
        std::vector<std::size_t> w(table[0].size(), 0);
        for (const auto& l : table)
            for (std::size_t i = 0; i + 1 < l.size(); ++i)
                w[i] = std::max(w[i], l[i].size());
        for (const auto& l : table) {
            for (std::size_t i = 0; i < l.size(); ++i)
                out << l[i] << (i + 1 < l.size() ? std::string(w[i] - l[i].size() + 2, ' ') : "");
            out << "\n";
        }
        out << r["rows"].size() << " pairs, " << r["deduplicated"].size() << " up to the E6 diagram automorphism\n";
        for (const auto& e : r["excluded"])
            out << "excluded: " << e["space"].get<std::string>() << " " << e["bundle"].get<std::string>() << " ("
                << e["reasons"][0].get<std::string>() << ")\n";
        if (verbose)
            for (const auto& e : r["rejected"])
                out << "rejected: " << e["space"].get<std::string>() << ": " << e["reason"].get<std::string>() << "\n";
    }
    if (doc["status"] != "exact")
        out << "status: " << doc["status"].get<std::string>() << "\n";
}

void print_csv(std::ostream& out, const json& doc)
{
    const std::string cmd = doc["command"];
    const json& r = doc["results"];
    auto line = [&](std::initializer_list<std::string> fields) {
        bool first = true;
        for (const auto& f : fields) {
            out << (first ? "" : ",") << csv_field(f);
            first = false;
        }
        out << "\n";
    };
    if (cmd == "roots") {
        line({"index", "root", "weight"});
        int i = 0;
        for (const auto& a : r["roots"])
            line({std::to_string(++i), vec_text(a["root"]), vec_text(a["weight"])});
    } else if (cmd == "dim") {
        line({"space", "dim", "index", "embed"});
        line({doc["space"], r["dim"].dump(), r["index"].dump(), big_text(r["embed"])});
    } else if (cmd == "dex" || cmd == "ext") {
        line({"summand", "weight", "multiplicity", "rank", "dex"});
        for (const auto& s : r["summands"])
            line({s["expr"], vec_text(s["weight"]), big_text(s["multiplicity"]), big_text(s["rank"]), s["dex"].dump()});
    } else if (cmd == "bwb") {
        line({"summand", "weight", "singular", "degree", "module", "dim"});
        for (const auto& s : r["summands"])
            line({s["expr"], vec_text(s["weight"]), s["singular"].dump(), s.value("degree", json("")).dump(),
                  s.contains("module") ? vec_text(s["module"]) : "", s.contains("dim") ? big_text(s["dim"]) : ""});
    } else if (cmd == "cohomology") {
        const auto& c = r["cohomology"];
        line({"q", "h", "lower", "upper"});
        for (std::size_t q = 0; q < c["h"].size(); ++q)
            line({std::to_string(q), cell_text(c["h"][q]), big_text(c["lower"][q]), big_text(c["upper"][q])});
    } else if (cmd == "hodge") {
        line({"p", "q", "h", "flag"});
        const int d = r["d"];
        for (int p = 0; p <= d; ++p)
            for (int q = 0; q <= d; ++q)
                line({std::to_string(p), std::to_string(q), cell_text(r["diamond"][p][q]), r["flags"][p][q]});
    } else if (cmd == "classify") {
        line({"no", "space", "dim", "index", "bundle", "h02", "h11", "h12", "h13", "h22", "chi", "same_as", "verified"});
        for (const auto& row : r["rows"]) {
            const bool has = row.contains("hodge");
            auto get = [&](const char* key) {
                return has && row["hodge"].contains(key) ? cell_text(row["hodge"][key]) : std::string("");
            };
            line({row["no"].dump(), row["space"], row["dim"].dump(), row["index"].dump(), row["bundle"], get("h02"),
                  get("h11"), get("h12"), get("h13"), get("h22"), get("chi"), row["same_as"].dump(),
                  row["verified_family"].dump()});
        }
    }
}

void emit(std::ostream& out, const Config& cfg, json doc)
{
    if (cfg.format == "json") {
        if (!cfg.verbose && doc["results"].contains("chase"))
            doc["results"]["chase"].erase("steps");
        out << doc.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        print_csv(out, doc);
    } else {
        print_table(out, doc, cfg.verbose);
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Borel-Weil-Bott cohomology, zero loci and Hodge numbers on G/P", "bwbforge"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--cache-dir", cfg.cache_dir, "Cache directory (default: $BWBFORGE_CACHE)");
    app.add_flag("--no-cache", cfg.no_cache, "Do not read or write the cache");
    app.add_flag("--allow-bounds", cfg.allow_bounds, "Exit 2 instead of 1 when a result is only bounded");
    app.add_flag("-v,--verbose", cfg.verbose, "Show E1 entries and the exact-sequence trail");
    app.set_version_flag("--version", kEngineVersion);

    std::string group, space, bundle, restrict_to, family = "exceptional", cache_action;
    int p = 0, d = 0;
    bool no_exceptions = false, no_hodge = false;

    auto* roots = app.add_subcommand("roots", "Root datum of a simple type");
    roots->add_option("G", group)->required();
    auto* dim = app.add_subcommand("dim", "Dimension, index and minimal embedding of G/Pk");
    dim->add_option("space", space)->required();
    auto* dex = app.add_subcommand("dex", "Rank and dex of a bundle");
    dex->add_option("space", space)->required();
    dex->add_option("bundle", bundle)->required();
    auto* bwbc = app.add_subcommand("bwb", "Borel-Weil-Bott for each summand");
    bwbc->add_option("space", space)->required();
    bwbc->add_option("bundle", bundle)->required();
    auto* ext = app.add_subcommand("ext", "Exterior power of a bundle");
    ext->add_option("space", space)->required();
    ext->add_option("bundle", bundle)->required();
    ext->add_option("p", p)->required()->check(CLI::NonNegativeNumber);
    auto* coh = app.add_subcommand("cohomology", "Cohomology on G/P, or on the zero locus with --restrict");
    coh->add_option("space", space)->required();
    coh->add_option("bundle", bundle, "Bundle, or Omega[(t)] / Omega2[(t)]")->required();
    coh->add_option("--restrict", restrict_to, "Bundle E restricted to the zero locus of the given bundle");
    auto* hodge = app.add_subcommand("hodge", "Hodge numbers of the zero locus");
    hodge->add_option("space", space)->required();
    hodge->add_option("bundle", bundle)->required();
    hodge->add_option("--d", d, "Expected dimension of the zero locus")->required();
    auto* cls = app.add_subcommand("classify", "Calabi-Yau zero loci with trivial canonical bundle");
    cls->add_option("--d", d)->required()->check(CLI::IsMember({3, 4}));
    cls->add_option("--family", family)->check(CLI::IsMember({"exceptional", "all"}));
    cls->add_flag("--no-exceptions", no_exceptions, "Disable the curated nowhere-vanishing list");
    cls->add_flag("--no-hodge", no_hodge, "Skip Hodge numbers");
    auto* cache = app.add_subcommand("cache", "Inspect or clear the cache");
    cache->add_option("action", cache_action)->required()->check(CLI::IsMember({"stats", "clear"}));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Exact : Failure;
    }

    std::shared_ptr<DiskCache> disk;
    if (!cfg.no_cache) {
        disk = std::make_shared<DiskCache>(cfg.cache_dir.empty() ? DiskCache::default_dir()
                                                                 : std::filesystem::path(cfg.cache_dir));
        set_plethysm_store(std::make_shared<DiskPlethysmStore>(disk));
    }
    struct StoreReset {
        ~StoreReset() { set_plethysm_store(nullptr); }
    } reset;

    try {
        if (cache->parsed()) {
            const DiskCache c(cfg.cache_dir.empty() ? DiskCache::default_dir() : std::filesystem::path(cfg.cache_dir));
            if (cache_action == "stats") {
                const auto s = c.stats();
                json doc = base_doc("cache", "", "");
                doc["results"] = {{"dir", c.dir().string()}, {"entries", s.entries}, {"stale", s.stale}, {"bytes", s.bytes}};
                if (cfg.format == "json")
                    out << doc.dump(2) << "\n";
                else
                    out << "dir=" << c.dir().string() << " entries=" << s.entries << " stale=" << s.stale
                        << " bytes=" << s.bytes << "\n";
            } else {
                const std::size_t n = c.clear();
                out << "removed " << n << " entries from " << c.dir().string() << "\n";
            }
            return Exact;
        }

        auto cached = [&](const std::string& key, auto compute) -> Outcome {
            if (disk)
                if (auto hit = disk->get(key)) {
                    json doc = json::parse(*hit);
                    return {doc, doc["status"] == "exact"};
                }
            Outcome o = compute();
            if (disk)
                disk->put(key, o.doc.dump());
            return o;
        };

        Outcome o;
        if (roots->parsed()) {
            o = cmd_roots(group);
        } else if (dim->parsed()) {
            o = cmd_dim(space);
        } else if (dex->parsed()) {
            o = cmd_dex(space, bundle);
        } else if (bwbc->parsed()) {
            o = cmd_bwb(space, bundle);
        } else if (ext->parsed()) {
            const HomSpace x = HomSpace::parse(space);
            o = cached("ext|" + x.name() + "|" + serialize(parse_bundle(x, bundle)) + "|" + std::to_string(p),
                       [&] { return cmd_ext(space, bundle, p); });
        } else if (coh->parsed()) {
            const HomSpace x = HomSpace::parse(space);
            const std::string key = "cohomology|" + x.name() + "|" + canonical(x, bundle) + "|" +
                                    (restrict_to.empty() ? "" : canonical(x, restrict_to)) + "|" + bundle + "|" +
                                    restrict_to;
            o = cached(key, [&] { return cmd_cohomology(space, bundle, restrict_to); });
        } else if (hodge->parsed()) {
            const HomSpace x = HomSpace::parse(space);
            o = cached("hodge|" + x.name() + "|" + serialize(parse_bundle(x, bundle)) + "|" + std::to_string(d),
                       [&] { return cmd_hodge(space, bundle, d); });
        } else if (cls->parsed()) {
            o = cached("classify|" + std::to_string(d) + "|" + family + "|" + (no_exceptions ? "open" : "curated") +
                           "|" + (no_hodge ? "nohodge" : "hodge"),
                       [&] { return cmd_classify(d, family, no_exceptions, no_hodge); });
        }
        emit(out, cfg, o.doc);
        if (o.exact)
            return Exact;
        if (cfg.allow_bounds)
            return AmbiguousAllowed;
        err << "error: result is ambiguous (some values are only bounded); pass --allow-bounds to accept\n";
        return Failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return Failure;
    }
}

}  // namespace bwbforge::cli
