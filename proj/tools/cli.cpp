#include "cli.hpp"

#include <forbconf/constructions.hpp>
#include <forbconf/containment.hpp>
#include <forbconf/error.hpp>
#include <forbconf/matrix_io.hpp>
#include <forbconf/search.hpp>
#include <forbconf/structure.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <functional>
#include <ostream>

namespace forbconf::cli {

namespace {

using Json = nlohmann::ordered_json;

std::vector<std::size_t> parse_numbers(std::string_view list, std::string_view literal)
{
    std::vector<std::size_t> out;
    while (true) {
        const auto comma = list.find(',');
        const auto tok = list.substr(0, comma);
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            throw Error("bad number '" + std::string(tok) + "' in '" + std::string(literal) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos)
            break;
        list = list.substr(comma + 1);
    }
    return out;
}

bool is_literal_kind(std::string_view kind)
{
    return kind == "K" || kind == "F" || kind == "tF" || kind == "I" || kind == "Ic" || kind == "T";
}

std::string join_rows(const RowSet & rows)
{
    std::string s = "{";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0)
            s += ",";
        s += std::to_string(rows[i] + 1);
    }
    return s + "}";
}

Json one_based(const std::vector<std::size_t> & v)
{
    Json out = Json::array();
    for (auto x : v)
        out.push_back(x + 1);
    return out;
}

std::string family_label(const std::vector<std::string> & literals)
{
    std::string s = "{";
    for (std::size_t i = 0; i < literals.size(); ++i) {
        if (i > 0)
            s += ", ";
        s += literals[i];
    }
    return s + "}";
}

Json family_json(const std::vector<BinMatrix> & family)
{
    Json out = Json::array();
    for (const auto & f : family)
        out.push_back(format_matrix(f));
    return out;
}

std::vector<BinMatrix> parse_family(const std::vector<std::string> & literals)
{
    std::vector<BinMatrix> out;
    for (const auto & s : literals)
        out.push_back(parse_family_literal(s));
    return out;
}

void print_json(std::ostream & out, const Json & j)
{
    out << j.dump(2) << "\n";
}

struct SearchFlags {
    std::size_t threads = 0;
    std::uint64_t max_nodes = std::uint64_t{1} << 40;

    [[nodiscard]] SearchOptions options() const { return {max_nodes, threads}; }
};

void add_search_flags(CLI::App * sub, SearchFlags & flags)
{
    sub->add_option("--threads", flags.threads, "worker threads (0 = all cores)");
    sub->add_option("--max-nodes", flags.max_nodes, "node limit; the result is marked incomplete when hit")
        ->check(CLI::PositiveNumber);
}

// contains

struct ContainsArgs {
    std::string a;
    std::string f;
    bool json = false;
};

int run_contains(const ContainsArgs & args, std::ostream & out)
{
    const auto a = parse_matrix_argument(args.a);
    const auto f = parse_matrix_argument(args.f);
    const auto w = contains(a, f);
    if (args.json) {
        Json j;
        j["a"] = format_matrix(a);
        j["f"] = format_matrix(f);
        j["contained"] = w.has_value();
        if (w)
            j["witness"] = {{"rows", one_based(w->row_map)}, {"columns", one_based(w->column_map)}};
        else
            j["witness"] = nullptr;
        print_json(out, j);
        return Ok;
    }
    if (!w) {
        out << "not contained\n";
        return Ok;
    }
    out << "contained\n";
    out << "rows:";
    for (auto r : w->row_map)
        out << " " << r + 1;
    out << "\ncolumns:";
    for (auto c : w->column_map)
        out << " " << c + 1;
    out << "\n";
    return Ok;
}

// forb

struct ForbArgs {
    std::size_t m = 0;
    std::size_t t = 1;
    std::vector<std::string> family;
    SearchFlags search;
    bool all_optima = false;
    std::size_t limit = 100000;
    bool json = false;
};

int run_forb(const ForbArgs & args, std::ostream & out)
{
    const SearchProblem p{args.m, ConfigProblem{parse_family(args.family), args.t}, args.search.options()};
    const std::string head = "forb(" + std::to_string(args.m) + ", " + family_label(args.family) +
                             ", t=" + std::to_string(args.t) + ")";
    if (args.all_optima) {
        const auto r = all_optimal_witnesses(p, args.limit);
        if (args.json) {
            Json j;
            j["m"] = args.m;
            j["t"] = args.t;
            j["family"] = family_json(p.problem.family);
            j["value"] = r.value;
            j["complete"] = r.complete;
            Json ws = Json::array();
            for (const auto & w : r.witnesses)
                ws.push_back(format_matrix(w));
            j["witnesses"] = ws;
            print_json(out, j);
            return Ok;
        }
        out << head << " = " << r.value << (r.complete ? "" : " (incomplete, lower bound)") << "\n";
        out << r.witnesses.size() << " maximum witnesses\n";
        for (const auto & w : r.witnesses)
            out << "\n" << format_matrix(w);
        return Ok;
    }

    const auto r = forb_exact(p);
    if (args.json) {
        Json j;
        j["m"] = args.m;
        j["t"] = args.t;
        j["family"] = family_json(p.problem.family);
        j["value"] = r.value;
        j["complete"] = r.complete;
        j["nodes"] = r.nodes;
        j["witness"] = format_matrix(r.witness);
        print_json(out, j);
        return Ok;
    }
    out << head << " = " << r.value << "\n";
    out << "complete: " << (r.complete ? "yes" : "no, node limit hit; value is a lower bound") << "\n";
    out << "nodes: " << r.nodes << "\n";
    out << "witness:\n" << format_matrix(r.witness);
    return Ok;
}

// xvalue

struct XValueArgs {
    std::string family;
    std::size_t p_max = 4;
    bool json = false;
};

std::string factors_only(const ProductSpec & spec)
{
    const auto s = spec.to_string();
    return s.substr(0, s.find('@'));
}

int run_xvalue(const XValueArgs & args, std::ostream & out)
{
    const auto f = parse_family_literal(args.family);
    const auto r = x_value(f, args.p_max);
    if (args.json) {
        Json j;
        j["family"] = format_matrix(f);
        j["decided"] = r.decided;
        j["x"] = r.decided ? Json(r.x) : Json(nullptr);
        j["avoiding"] = r.avoiding_spec ? Json(factors_only(*r.avoiding_spec)) : Json(nullptr);
        j["avoiding_spec"] = r.avoiding_spec ? Json(r.avoiding_spec->to_string()) : Json(nullptr);
        j["block"] = r.block_used;
        j["m_used"] = r.m_used;
        j["stable"] = r.stable;
        j["predicted_exponent"] = r.decided ? Json(r.x - 1) : Json(nullptr);
        print_json(out, j);
        return Ok;
    }
    if (!r.decided) {
        out << "x undecided: an avoiding product exists for every p <= " << args.p_max << "\n";
        return Ok;
    }
    out << "x = " << r.x;
    if (r.avoiding_spec)
        out << ", avoiding " << factors_only(*r.avoiding_spec) << " (" << r.avoiding_spec->to_string() << ")";
    out << "\n";
    out << "block " << r.block_used << ", m up to " << r.m_used << ", "
        << (r.stable ? "same answer at block " : "DIFFERENT answer at block ") << r.block_used + 1 << "\n";
    out << "predicted exponent " << r.x - 1 << "\n";
    return Ok;
}

// construct

struct ConstructArgs {
    std::string spec;
    std::string table;
    std::size_t t = 1;
    std::size_t block = 0;
    std::vector<std::string> check;
    bool json = false;
};

int run_construct(const ConstructArgs & args, std::ostream & out)
{
    ProductSpec spec;
    std::vector<std::string> labels = args.check;
    std::vector<BinMatrix> against = parse_family(args.check);
    if (!args.spec.empty()) {
        spec = ProductSpec::parse(args.spec);
    } else {
        const auto v = parse_numbers(args.table, args.table);
        if (v.size() != 4)
            throw Error("--table needs a,b,c,d");
        if (args.block == 0)
            throw Error("--table needs --block >= 1");
        const auto fs = normalize(FSpec{v[0], v[1], v[2], v[3], args.t});
        spec = table1_construction(fs, args.block);
        labels.push_back("tF:" + std::to_string(fs.t) + "," + std::to_string(fs.a) + "," + std::to_string(fs.b) +
                         "," + std::to_string(fs.c) + "," + std::to_string(fs.d));
        against.push_back(build_F(fs));
    }
    const auto a = realize(spec);

    bool avoids_all = true;
    std::vector<bool> hit;
    for (const auto & f : against) {
        hit.push_back(contains(a, f).has_value());
        avoids_all = avoids_all && !hit.back();
    }

    if (args.json) {
        Json j;
        j["spec"] = spec.to_string();
        j["rows"] = a.rows();
        j["cols"] = a.cols();
        j["matrix"] = format_matrix(a);
        Json checks = Json::array();
        for (std::size_t i = 0; i < against.size(); ++i)
            checks.push_back({{"family", labels[i]}, {"contained", static_cast<bool>(hit[i])}});
        j["checks"] = checks;
        j["avoids"] = avoids_all;
        print_json(out, j);
    } else {
        out << spec.to_string() << "\n" << format_matrix(a);
        for (std::size_t i = 0; i < against.size(); ++i)
            out << labels[i] << ": " << (hit[i] ? "CONTAINED" : "avoided") << "\n";
    }
    return avoids_all ? Ok : CheckFailed;
}

// decompose

struct DecomposeArgs {
    std::string a;
    std::size_t row = 0;
    std::size_t t = 2;
    bool json = false;
};

int run_decompose(const DecomposeArgs & args, std::ostream & out)
{
    const auto a = parse_matrix_argument(args.a);
    if (args.row == 0 || args.row > a.rows())
        throw Error("row " + std::to_string(args.row) + " out of range 1.." + std::to_string(a.rows()));
    const auto d = decompose_row(a, args.row - 1, args.t);
    const auto bcd = d.bcd();
    const bool identity = a.cols() == bcd.cols() + d.c.cols();
    const bool bcd_simple = bcd.is_t_simple(args.t - 1);
    const bool c_simple = d.c.is_t_simple(args.t - 1);
    const bool ok = identity && bcd_simple && c_simple;

    if (args.json) {
        Json j;
        j["row"] = args.row;
        j["t"] = args.t;
        j["B"] = format_matrix(d.b);
        j["C"] = format_matrix(d.c);
        j["D"] = format_matrix(d.d);
        j["cols_A"] = a.cols();
        j["cols_BCD"] = bcd.cols();
        j["cols_C"] = d.c.cols();
        j["identity_holds"] = identity;
        j["bcd_simple"] = bcd_simple;
        j["c_simple"] = c_simple;
        print_json(out, j);
    } else {
        out << "B:\n" << format_matrix(d.b) << "C:\n" << format_matrix(d.c) << "D:\n" << format_matrix(d.d);
        out << "||A|| = " << a.cols() << ", ||[BCD]|| + ||C|| = " << bcd.cols() << " + " << d.c.cols() << "\n";
        out << "[BCD] " << (bcd_simple ? "is" : "is NOT") << " " << args.t - 1 << "-simple, C "
            << (c_simple ? "is" : "is NOT") << " " << args.t - 1 << "-simple\n";
    }
    return ok ? Ok : CheckFailed;
}

// analyze

struct AnalyzeArgs {
    std::string a;
    std::size_t k = 2;
    bool json = false;
};

// 2k m^(k-2) without overflow worries at desk scale; saturates.
unsigned __int128 premise_edges(std::size_t k, std::size_t m)
{
    unsigned __int128 v = 2 * static_cast<unsigned __int128>(k);
    for (std::size_t i = 2; i < k; ++i) {
        v *= m;
        if (v > static_cast<unsigned __int128>(UINT64_MAX))
            return v;
    }
    return v;
}

int run_analyze(const AnalyzeArgs & args, std::ostream & out)
{
    const auto a = parse_matrix_argument(args.a);
    if (!a.is_t_simple(1))
        throw Error("analyze needs a simple matrix");
    if (args.k < 2)
        throw Error("analyze needs k >= 2");
    const std::size_t m = a.rows();

    Json layers = Json::array();
    for (const auto & [i, x] : split_layers(a)) {
        Json layer;
        layer["i"] = i;
        layer["size"] = x.cols();

        const auto sf = classify_sunflower(x);
        if (sf.status == LayerStatus::Classified)
            layer["sunflower"] = {{"kind", sf.value->kind}, {"A", one_based(sf.value->petals)},
                {"B", one_based(sf.value->center)}, {"C", one_based(sf.value->zeros)}};
        else
            layer["sunflower"] = sf.status == LayerStatus::Absent ? "absent" : "indeterminate";

        const auto ty = classify_type_ab(x, args.k);
        if (ty.status == LayerStatus::Classified) {
            const auto & t = *ty.value;
            layer["type_ab"] = {{"a", t.a}, {"b", t.b}, {"C", one_based(t.rows_c)}, {"D", one_based(t.rows_d)}};
            if (t.a >= 1 && t.b >= 1) {
                const auto g = build_layer_graph(x, t);
                const auto pruned = prune_layer_graph(g, t.a, t.b, m);
                layer["graph"] = {{"vertices", g.vertex_count()}, {"edges", g.edges.size()},
                    {"pruned_edges", pruned.edges.size()},
                    {"premise_met", g.edges.size() >= premise_edges(args.k, m)}};
            } else {
                layer["graph"] = "absent";
            }
        } else {
            layer["type_ab"] = ty.status == LayerStatus::Absent ? "absent" : "indeterminate";
            layer["graph"] = "absent";
        }
        layers.push_back(layer);
    }

    if (args.json) {
        Json j;
        j["m"] = m;
        j["k"] = args.k;
        j["layers"] = layers;
        print_json(out, j);
        return Ok;
    }
    for (const auto & l : layers) {
        out << "layer " << l["i"].get<std::size_t>() << ": " << l["size"].get<std::size_t>() << " columns\n";
        const auto & sf = l["sunflower"];
        out << "  sunflower: ";
        if (sf.is_string()) {
            out << sf.get<std::string>();
        } else {
            auto rows = [](const Json & v) {
                RowSet r;
                for (const auto & x : v)
                    r.push_back(x.get<std::size_t>() - 1);
                return join_rows(r);
            };
            out << "type " << sf["kind"].get<int>() << ", A=" << rows(sf["A"]) << " B=" << rows(sf["B"])
                << " C=" << rows(sf["C"]);
        }
        out << "\n  type: ";
        const auto & ty = l["type_ab"];
        if (ty.is_string()) {
            out << ty.get<std::string>();
        } else {
            out << "(" << ty["a"].get<std::size_t>() << "," << ty["b"].get<std::size_t>() << ")";
        }
        out << "\n";
        const auto & g = l["graph"];
        if (!g.is_string())
            out << "  graph: " << g["vertices"].get<std::size_t>() << " vertices, " << g["edges"].get<std::size_t>()
                << " edges, " << g["pruned_edges"].get<std::size_t>() << " after pruning\n";
    }
    return Ok;
}

// check

struct CheckArgs {
    std::string suite;
    std::vector<std::size_t> ms;
    std::size_t t = 2;
    std::vector<std::string> family;
    SearchFlags search;
    bool json = false;
};

int run_check(const CheckArgs & args, std::ostream & out)
{
    const auto family = parse_family(args.family);
    Json reports = Json::array();
    Verdict verdict = Verdict::Pass;
    for (auto m : args.ms) {
        const auto rep = args.suite == "sandwich" ? sandwich_check(m, family, args.t, args.search.options())
                                                  : induction_check(m, family, args.t, args.search.options());
        if (rep.verdict == Verdict::Fail || (rep.verdict == Verdict::Inconclusive && verdict == Verdict::Pass))
            verdict = rep.verdict;
        Json r;
        r["m"] = m;
        Json terms = Json::array();
        for (const auto & term : rep.terms)
            terms.push_back({{"name", term.name}, {"value", term.value}, {"complete", term.complete}});
        r["terms"] = terms;
        Json checks = Json::array();
        for (const auto & c : rep.checks)
            checks.push_back(
                {{"statement", c.statement}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"verdict", to_string(c.verdict)}});
        r["checks"] = checks;
        r["verdict"] = to_string(rep.verdict);
        reports.push_back(r);
    }

    if (args.json) {
        Json j;
        j["suite"] = args.suite;
        j["t"] = args.t;
        j["family"] = family_json(family);
        j["reports"] = reports;
        j["verdict"] = to_string(verdict);
        print_json(out, j);
    } else {
        out << args.suite << " check, family " << family_label(args.family) << ", t=" << args.t << "\n";
        for (const auto & r : reports) {
            out << "m=" << r["m"].get<std::size_t>() << "\n";
            for (const auto & term : r["terms"])
                out << "  " << term["name"].get<std::string>() << " = " << term["value"].get<std::uint64_t>()
                    << (term["complete"].get<bool>() ? "" : " (incomplete)") << "\n";
            for (const auto & c : r["checks"])
                out << "  " << c["statement"].get<std::string>() << ": " << c["lhs"].get<std::uint64_t>()
                    << " vs " << c["rhs"].get<std::uint64_t>() << " -> " << c["verdict"].get<std::string>() << "\n";
        }
        out << "verdict: " << to_string(verdict) << "\n";
    }
    return verdict == Verdict::Fail ? CheckFailed : Ok;
}

}  // namespace

BinMatrix parse_family_literal(std::string_view text)
{
    if (!text.empty() && text.front() == '@')
        return read_matrix_file(std::string(text.substr(1)));
    const auto colon = text.find(':');
    const auto kind = text.substr(0, colon);
    if (colon == std::string_view::npos || !is_literal_kind(kind))
        throw Error("bad family literal '" + std::string(text) +
                    "'; expected K:k, F:a,b,c,d, tF:t,a,b,c,d, I:k, Ic:k, T:k or @path");
    const auto v = parse_numbers(text.substr(colon + 1), text);
    auto expect = [&](std::size_t n) {
        if (v.size() != n)
            throw Error("'" + std::string(text) + "' needs " + std::to_string(n) + " numbers");
    };
    if (kind == "F" || kind == "tF") {
        const bool multi = kind == "tF";
        expect(multi ? 5 : 4);
        const std::size_t o = multi ? 1 : 0;
        const FSpec s{v[o], v[o + 1], v[o + 2], v[o + 3], multi ? v[0] : 1};
        if (s.t == 0)
            throw Error("'" + std::string(text) + "': t must be >= 1");
        return build_F(s);
    }
    expect(1);
    if (v[0] == 0)
        throw Error("'" + std::string(text) + "': size must be >= 1");
    if (kind == "K")
        return build_standard(StandardKind::Complete, v[0]);
    if (kind == "I")
        return build_standard(StandardKind::Identity, v[0]);
    if (kind == "Ic")
        return build_standard(StandardKind::IdentityComplement, v[0]);
    return build_standard(StandardKind::Triangular, v[0]);
}

BinMatrix parse_matrix_argument(std::string_view text)
{
    const auto colon = text.find(':');
    if ((!text.empty() && text.front() == '@') ||
        (colon != std::string_view::npos && is_literal_kind(text.substr(0, colon))))
        return parse_family_literal(text);
    return read_matrix_file(std::string(text));
}

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Forbidden configurations in (0,1)-matrices", "forbconf"};
    app.require_subcommand(1, 1);

    ContainsArgs contains_args;
    auto * contains_cmd = app.add_subcommand("contains", "test whether F is a configuration of A");
    contains_cmd->add_option("--a", contains_args.a, "matrix A (file or literal)")->required();
    contains_cmd->add_option("--f", contains_args.f, "configuration F (literal or file)")->required();
    contains_cmd->add_flag("--json", contains_args.json);

    ForbArgs forb_args;
    auto * forb_cmd = app.add_subcommand("forb", "exact forb(m, family, t)");
    forb_cmd->add_option("--m", forb_args.m, "rows")->required()->check(CLI::Range(1, 20));
    forb_cmd->add_option("--family", forb_args.family, "forbidden configurations")->required();
    forb_cmd->add_option("--t", forb_args.t, "column multiplicity bound")->check(CLI::PositiveNumber);
    forb_cmd->add_flag("--all-optima", forb_args.all_optima, "list every maximum witness (sequential)");
    forb_cmd->add_option("--limit", forb_args.limit, "maximum number of witnesses for --all-optima");
    add_search_flags(forb_cmd, forb_args.search);
    forb_cmd->add_flag("--json", forb_args.json);

    XValueArgs x_args;
    auto * x_cmd = app.add_subcommand("xvalue", "least p with F in every p-fold product of I, Ic, T");
    x_cmd->add_option("--family", x_args.family, "configuration F")->required();
    x_cmd->add_option("--p-max", x_args.p_max, "largest p tried")->check(CLI::Range(1, 6));
    x_cmd->add_flag("--json", x_args.json);

    ConstructArgs construct_args;
    auto * construct_cmd = app.add_subcommand("construct", "build a product construction and check avoidance");
    auto * spec_opt = construct_cmd->add_option("--spec", construct_args.spec, "product, e.g. IxT@4");
    auto * table_opt = construct_cmd->add_option("--table", construct_args.table, "a,b,c,d of t*F_{a,b,c,d}");
    spec_opt->excludes(table_opt);
    construct_cmd->add_option("--t", construct_args.t, "multiplicity for --table")->check(CLI::PositiveNumber);
    construct_cmd->add_option("--block", construct_args.block, "block size for --table");
    construct_cmd->add_option("--check", construct_args.check, "configurations the product must avoid");
    construct_cmd->add_flag("--json", construct_args.json);

    DecomposeArgs decompose_args;
    auto * decompose_cmd = app.add_subcommand("decompose", "split A at a row into B, C, D");
    decompose_cmd->add_option("--a", decompose_args.a, "matrix A (file or literal)")->required();
    decompose_cmd->add_option("--row", decompose_args.row, "row, 1-based")->required();
    decompose_cmd->add_option("--t", decompose_args.t, "A must be (t-1)-simple; t >= 2")->required();
    decompose_cmd->add_flag("--json", decompose_args.json);

    AnalyzeArgs analyze_args;
    auto * analyze_cmd = app.add_subcommand("analyze", "column-sum layers: sunflowers, types, layer graphs");
    analyze_cmd->add_option("--a", analyze_args.a, "simple matrix A (file or literal)")->required();
    analyze_cmd->add_option("--k", analyze_args.k, "k of F_{0,k,k,0}; types have a + b = k - 1");
    analyze_cmd->add_flag("--json", analyze_args.json);

    CheckArgs check_args;
    auto * check_cmd = app.add_subcommand("check", "numeric checks of the sandwich and induction bounds");
    check_cmd->add_option("--suite", check_args.suite, "sandwich or induction")
        ->required()
        ->check(CLI::IsMember({"sandwich", "induction"}));
    check_cmd->add_option("--m", check_args.ms, "row counts")->required()->check(CLI::Range(1, 20));
    check_cmd->add_option("--family", check_args.family, "forbidden configurations")->required();
    check_cmd->add_option("--t", check_args.t, "multiplicity")->check(CLI::PositiveNumber);
    add_search_flags(check_cmd, check_args.search);
    check_cmd->add_flag("--json", check_args.json);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError & e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? Ok : UsageError;
    }

    try {
        if (contains_cmd->parsed())
            return run_contains(contains_args, out);
        if (forb_cmd->parsed())
            return run_forb(forb_args, out);
        if (x_cmd->parsed())
            return run_xvalue(x_args, out);
        if (construct_cmd->parsed()) {
            if (construct_args.spec.empty() && construct_args.table.empty())
                throw Error("construct needs --spec or --table");
            return run_construct(construct_args, out);
        }
        if (decompose_cmd->parsed())
            return run_decompose(decompose_args, out);
        if (analyze_cmd->parsed())
            return run_analyze(analyze_args, out);
        if (check_cmd->parsed())
            return run_check(check_args, out);
    } catch (const std::exception & e) {
        err << "error: " << e.what() << "\n";
        return UsageError;
    }
    return UsageError;
}

}  // namespace forbconf::cli
