#include <forbconf/error.hpp>
#include <forbconf/structure.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <set>

namespace forbconf {

namespace {

constexpr std::size_t kMaxPartitionRows = 16;

void require_equal_sums(const BinMatrix & x)
{
    if (x.distinct() == 0)
        return;
    const auto w = x.entries().front().column.weight();
    for (const auto & e : x.entries())
        if (e.column.weight() != w)
            throw Error("layer has unequal column sums");
}

void require_simple(const BinMatrix & x)
{
    if (!x.is_t_simple(1))
        throw Error("layer must be simple");
}

std::uint64_t low_bits(const Column & c)
{
    return c.rows() == 0 ? 0 : c.words()[0] >> (64 - c.rows());
}

RowSet rows_of(std::uint64_t mask, std::size_t m)
{
    RowSet out;
    for (std::size_t i = 0; i < m; ++i)
        if ((mask >> (m - 1 - i)) & 1U)
            out.push_back(i);
    return out;
}

// m^e, saturating at 2^120.
unsigned __int128 power(std::size_t m, std::size_t e)
{
    const unsigned __int128 cap = static_cast<unsigned __int128>(1) << 120;
    unsigned __int128 r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        r *= m;
        if (r > cap)
            return cap;
    }
    return r;
}

}  // namespace

std::map<std::size_t, BinMatrix> split_layers(const BinMatrix & a)
{
    std::map<std::size_t, std::vector<BinMatrix::Entry>> groups;
    for (const auto & e : a.entries())
        groups[e.column.weight()].push_back(e);
    std::map<std::size_t, BinMatrix> out;
    for (auto & [i, entries] : groups)
        out.emplace(i, BinMatrix(a.rows(), std::move(entries)));
    return out;
}

BinMatrix RowDecomposition::bcd() const
{
    return concat(concat(b, c), d);
}

RowDecomposition decompose_row(const BinMatrix & a, std::size_t row, std::size_t t)
{
    if (t < 2)
        throw Error("decompose_row needs t >= 2");
    if (row >= a.rows())
        throw Error("row " + std::to_string(row) + " out of range");
    if (!a.is_t_simple(t - 1))
        throw Error("matrix is not (t-1)-simple");

    std::vector<BinMatrix::Entry> g, h;
    for (const auto & e : a.entries())
        (e.column[row] ? h : g).push_back({e.column.without_row(row), e.count});
    const BinMatrix gm(a.rows() - 1, std::move(g));
    const BinMatrix hm(a.rows() - 1, std::move(h));

    std::vector<BinMatrix::Entry> common;
    for (const auto & e : gm.entries()) {
        const std::size_t in_h = hm.multiplicity(e.column);
        if (e.count + in_h >= t)
            common.push_back({e.column, std::min(e.count, in_h)});
    }
    RowDecomposition out;
    out.row = row;
    out.c = BinMatrix(a.rows() - 1, std::move(common));
    out.b = difference(gm, out.c);
    out.d = difference(hm, out.c);
    return out;
}

ConfigProblem inductive_children(const ConfigProblem & p)
{
    p.validate();
    const BinMatrix split_row = BinMatrix::from_rows({"01"});

    std::vector<BinMatrix> candidates;
    for (const auto & f : p.family) {
        for (std::size_t r = 0; r < f.rows(); ++r) {
            BinMatrix child = f.without_row(r);
            if (!contains(product(split_row, child), f))
                continue;
            const bool seen = std::any_of(candidates.begin(), candidates.end(),
                [&](const BinMatrix & c) { return same_configuration(c, child); });
            if (!seen)
                candidates.push_back(std::move(child));
        }
    }

    ConfigProblem out;
    out.t = 1;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        bool minimal = true;
        for (std::size_t j = 0; j < candidates.size() && minimal; ++j)
            if (i != j && contains(candidates[i], candidates[j]))
                minimal = false;
        if (minimal)
            out.family.push_back(candidates[i]);
    }
    for (const auto & f : p.family) {
        BinMatrix s = f.support();
        const bool seen = std::any_of(out.family.begin(), out.family.end(),
            [&](const BinMatrix & c) { return same_configuration(c, s); });
        if (!seen)
            out.family.push_back(std::move(s));
    }
    return out;
}

LayerResult<SunflowerClass> classify_sunflower(const BinMatrix & x)
{
    require_equal_sums(x);
    require_simple(x);
    if (x.cols() < 3)
        return {LayerStatus::Indeterminate, std::nullopt};

    const std::size_t m = x.rows();
    const auto weights = x.row_weights();
    const std::size_t n = x.cols();
    RowSet center, zeros, rest;
    for (std::size_t i = 0; i < m; ++i) {
        if (weights[i] == n)
            center.push_back(i);
        else if (weights[i] == 0)
            zeros.push_back(i);
        else
            rest.push_back(i);
    }
    if (rest.size() != n)
        return {LayerStatus::Absent, std::nullopt};

    for (int kind : {1, 2}) {
        const bool odd = kind == 1;  // the entry that appears once per column and per row
        bool ok = true;
        for (std::size_t i : rest)
            ok = ok && (odd ? weights[i] == 1 : weights[i] == n - 1);
        for (const auto & e : x.entries()) {
            std::size_t hits = 0;
            for (std::size_t i : rest)
                hits += e.column[i] == odd ? 1 : 0;
            ok = ok && hits == 1;
        }
        if (ok)
            return {LayerStatus::Classified, SunflowerClass{kind, rest, center, zeros}};
    }
    return {LayerStatus::Absent, std::nullopt};
}

BinMatrix realize_sunflower(const SunflowerClass & s, std::size_t rows)
{
    std::vector<Column> cols;
    for (std::size_t p : s.petals) {
        Column c(rows);
        for (std::size_t i : s.center)
            c.set(i, true);
        if (s.kind == 1) {
            c.set(p, true);
        } else {
            for (std::size_t q : s.petals)
                c.set(q, q != p);
        }
        cols.push_back(c);
    }
    return BinMatrix(rows, cols);
}

bool has_type(const BinMatrix & x, const TypeAB & type)
{
    std::vector<int> side(x.rows(), -1);
    for (auto r : type.rows_c) {
        if (r >= x.rows() || side[r] != -1)
            return false;
        side[r] = 0;
    }
    for (auto r : type.rows_d) {
        if (r >= x.rows() || side[r] != -1)
            return false;
        side[r] = 1;
    }
    if (std::find(side.begin(), side.end(), -1) != side.end())
        return false;
    for (const auto & e : x.entries()) {
        std::size_t ones_c = 0, zeros_d = 0;
        for (auto r : type.rows_c)
            ones_c += e.column[r] ? 1 : 0;
        for (auto r : type.rows_d)
            zeros_d += e.column[r] ? 0 : 1;
        if (ones_c != type.a || zeros_d != type.b)
            return false;
    }
    return true;
}

LayerResult<TypeAB> classify_type_ab(const BinMatrix & x, std::size_t k)
{
    if (k < 2)
        throw Error("type (a,b) needs k >= 2");
    require_equal_sums(x);
    require_simple(x);
    if (x.empty())
        return {LayerStatus::Indeterminate, std::nullopt};
    const std::size_t m = x.rows();
    if (m > kMaxPartitionRows)
        throw Error("type (a,b) detection is limited to 16 rows");

    const std::size_t sum = x.entries().front().column.weight();
    const std::uint64_t full = m == 0 ? 0 : (~std::uint64_t{0} >> (64 - m));
    std::vector<std::uint64_t> cols;
    for (const auto & e : x.entries())
        cols.push_back(low_bits(e.column));

    for (std::size_t a = 0; a < k; ++a) {
        const std::size_t b = k - 1 - a;
        // |D| + a - b = column sum fixes |D|.
        const long d_size = static_cast<long>(sum) - static_cast<long>(a) + static_cast<long>(b);
        if (d_size < 0 || d_size > static_cast<long>(m))
            continue;
        for (std::uint64_t c_mask = 0; c_mask <= full; ++c_mask) {
            if (m - static_cast<std::size_t>(std::popcount(c_mask)) != static_cast<std::size_t>(d_size))
                continue;
            const std::uint64_t d_mask = full & ~c_mask;
            const bool ok = std::all_of(cols.begin(), cols.end(), [&](std::uint64_t v) {
                return static_cast<std::size_t>(std::popcount(v & c_mask)) == a &&
                    static_cast<std::size_t>(std::popcount(~v & d_mask)) == b;
            });
            if (ok)
                return {LayerStatus::Classified, TypeAB{a, b, rows_of(c_mask, m), rows_of(d_mask, m)}};
        }
    }
    return {LayerStatus::Absent, std::nullopt};
}

std::map<RowSet, std::size_t> LayerGraph::left_degrees() const
{
    std::map<RowSet, std::size_t> deg;
    for (const auto & [l, r] : edges)
        ++deg[l];
    return deg;
}

std::map<RowSet, std::size_t> LayerGraph::right_degrees() const
{
    std::map<RowSet, std::size_t> deg;
    for (const auto & [l, r] : edges)
        ++deg[r];
    return deg;
}

std::size_t LayerGraph::vertex_count() const
{
    return left_degrees().size() + right_degrees().size();
}

LayerGraph build_layer_graph(const BinMatrix & x, const TypeAB & type)
{
    if (type.a == 0 || type.b == 0)
        throw Error("layer graph needs a, b >= 1");
    if (!has_type(x, type))
        throw Error("layer is not of the given type (a,b)");
    std::set<std::pair<RowSet, RowSet>> edges;
    for (const auto & e : x.entries()) {
        RowSet left, right;
        for (auto r : type.rows_c)
            if (e.column[r])
                left.push_back(r);
        for (auto r : type.rows_d)
            if (!e.column[r])
                right.push_back(r);
        edges.emplace(std::move(left), std::move(right));
    }
    LayerGraph g;
    g.a = type.a;
    g.b = type.b;
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

LayerGraph prune_layer_graph(const LayerGraph & g, std::size_t a, std::size_t b, std::size_t m)
{
    if (a == 0 || b == 0)
        throw Error("layer graph pruning needs a, b >= 1");
    // deg < (2b+1) m^(b-1) / 2  <=>  2 deg < (2b+1) m^(b-1)
    const unsigned __int128 left_limit = (2 * static_cast<unsigned __int128>(b) + 1) * power(m, b - 1);
    const unsigned __int128 right_limit = (2 * static_cast<unsigned __int128>(a) + 1) * power(m, a - 1);

    LayerGraph out = g;
    out.a = a;
    out.b = b;
    while (true) {
        const auto ld = out.left_degrees();
        const auto rd = out.right_degrees();
        std::vector<std::pair<RowSet, RowSet>> kept;
        for (const auto & edge : out.edges) {
            const bool left_ok = 2 * static_cast<unsigned __int128>(ld.at(edge.first)) >= left_limit;
            const bool right_ok = 2 * static_cast<unsigned __int128>(rd.at(edge.second)) >= right_limit;
            if (left_ok && right_ok)
                kept.push_back(edge);
        }
        if (kept.size() == out.edges.size())
            return out;
        out.edges = std::move(kept);
    }
}

std::optional<StableSublayer> stable_sublayer(const BinMatrix & y, std::size_t k, const StabilityParams & params)
{
    if (k < 2)
        throw Error("type (a,b) needs k >= 2");
    require_equal_sums(y);
    if (y.empty())
        return std::nullopt;
    const std::size_t m = y.rows();
    if (m > kMaxPartitionRows)
        throw Error("stable sublayer search is limited to 16 rows");

    const std::uint64_t full = m == 0 ? 0 : (~std::uint64_t{0} >> (64 - m));
    std::size_t best_count = 0;
    std::size_t best_a = 0;
    std::uint64_t best_mask = 0;
    for (std::size_t a = 0; a < k; ++a) {
        const std::size_t b = k - 1 - a;
        for (std::uint64_t c_mask = 0;; ++c_mask) {
            const std::uint64_t d_mask = full & ~c_mask;
            std::size_t count = 0;
            for (const auto & e : y.entries()) {
                const auto v = low_bits(e.column);
                if (static_cast<std::size_t>(std::popcount(v & c_mask)) == a &&
                    static_cast<std::size_t>(std::popcount(~v & d_mask)) == b)
                    count += e.count;
            }
            if (count > best_count) {
                best_count = count;
                best_a = a;
                best_mask = c_mask;
            }
            if (c_mask == full)
                break;
        }
    }
    if (best_count == 0)
        return std::nullopt;

    StableSublayer out;
    out.type = TypeAB{best_a, k - 1 - best_a, rows_of(best_mask, m), rows_of(full & ~best_mask, m)};
    std::vector<BinMatrix::Entry> kept;
    for (const auto & e : y.entries()) {
        const auto v = low_bits(e.column);
        if (static_cast<std::size_t>(std::popcount(v & best_mask)) == out.type.a &&
            static_cast<std::size_t>(std::popcount(~v & full & ~best_mask)) == out.type.b)
            kept.push_back(e);
    }
    out.layer = BinMatrix(m, std::move(kept));
    out.loss = y.cols() - out.layer.cols();

    const long exponent = params.loss_exponent.value_or(static_cast<long>(k) - 3);
    if (exponent >= 0)
        out.loss_within_bound = static_cast<unsigned __int128>(out.loss) <= power(m, static_cast<std::size_t>(exponent));
    else
        out.loss_within_bound =
            static_cast<unsigned __int128>(out.loss) * power(m, static_cast<std::size_t>(-exponent)) <= 1;

    const long double coefficient = params.size_coefficient
        ? params.size_coefficient(k)
        : std::pow(6.0L * static_cast<long double>(k - 1), static_cast<long double>(5 * k + 2));
    if (!(coefficient > 0))
        throw Error("stability size coefficient must be positive");
    out.premise_threshold = coefficient * std::pow(static_cast<long double>(m), static_cast<long double>(k) - 2);
    out.premise_met = static_cast<long double>(y.cols()) >= out.premise_threshold;
    return out;
}

}  // namespace forbconf
