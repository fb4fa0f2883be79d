#include <forbconf/bin_matrix.hpp>
#include <forbconf/error.hpp>

#include <algorithm>
#include <utility>

namespace forbconf {

namespace {

void check_rows(std::size_t rows)
{
    if (rows > Column::max_rows)
        throw Error("matrix has " + std::to_string(rows) + " rows; at most 128 are supported");
}

}  // namespace

BinMatrix::BinMatrix(std::size_t rows) : rows_(rows)
{
    check_rows(rows);
}

BinMatrix::BinMatrix(std::size_t rows, std::span<const Column> columns) : rows_(rows)
{
    check_rows(rows);
    entries_.reserve(columns.size());
    for (const auto & c : columns)
        entries_.push_back({c, 1});
    normalize();
}

BinMatrix::BinMatrix(std::size_t rows, std::initializer_list<Column> columns)
    : BinMatrix(rows, std::span<const Column>(columns.begin(), columns.size()))
{
}

BinMatrix::BinMatrix(std::size_t rows, std::vector<Entry> entries) : rows_(rows), entries_(std::move(entries))
{
    check_rows(rows);
    normalize();
}

void BinMatrix::normalize()
{
    for (const auto & e : entries_)
        if (e.column.rows() != rows_)
            throw Error("row-count mismatch");
    std::sort(entries_.begin(), entries_.end(),
        [](const Entry & x, const Entry & y) { return x.column < y.column; });
    std::vector<Entry> merged;
    merged.reserve(entries_.size());
    for (auto & e : entries_) {
        if (e.count == 0)
            continue;
        if (!merged.empty() && merged.back().column == e.column)
            merged.back().count += e.count;
        else
            merged.push_back(e);
    }
    entries_ = std::move(merged);
    cols_ = 0;
    for (const auto & e : entries_)
        cols_ += e.count;
}

BinMatrix BinMatrix::from_rows(std::span<const std::string> rows)
{
    const std::size_t n = rows.empty() ? 0 : rows.front().size();
    std::vector<Column> cols(n, Column(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n)
            throw Error("ragged row " + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) {
            const char ch = rows[i][j];
            if (ch != '0' && ch != '1')
                throw Error("illegal character '" + std::string(1, ch) + "'");
            cols[j].set(i, ch == '1');
        }
    }
    return BinMatrix(rows.size(), cols);
}

BinMatrix BinMatrix::from_rows(std::initializer_list<std::string> rows)
{
    return from_rows(std::span<const std::string>(rows.begin(), rows.size()));
}

std::size_t BinMatrix::multiplicity(const Column & alpha) const
{
    if (alpha.rows() != rows_)
        throw Error("row-count mismatch");
    auto it = std::lower_bound(entries_.begin(), entries_.end(), alpha,
        [](const Entry & e, const Column & c) { return e.column < c; });
    return (it != entries_.end() && it->column == alpha) ? it->count : 0;
}

std::size_t BinMatrix::max_multiplicity() const noexcept
{
    std::size_t best = 0;
    for (const auto & e : entries_)
        best = std::max(best, e.count);
    return best;
}

bool BinMatrix::is_t_simple(std::size_t t) const noexcept
{
    return max_multiplicity() <= t;
}

BinMatrix BinMatrix::support() const
{
    BinMatrix s = *this;
    for (auto & e : s.entries_)
        e.count = 1;
    s.cols_ = s.entries_.size();
    return s;
}

BinMatrix BinMatrix::complement() const
{
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const auto & e : entries_)
        out.push_back({e.column.complemented(), e.count});
    return BinMatrix(rows_, std::move(out));
}

BinMatrix BinMatrix::without_row(std::size_t row) const
{
    if (row >= rows_)
        throw Error("row " + std::to_string(row) + " out of range");
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const auto & e : entries_)
        out.push_back({e.column.without_row(row), e.count});
    return BinMatrix(rows_ - 1, std::move(out));
}

BinMatrix BinMatrix::restrict_rows(std::span<const std::size_t> rows) const
{
    for (auto r : rows)
        if (r >= rows_)
            throw Error("row " + std::to_string(r) + " out of range");
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const auto & e : entries_)
        out.push_back({e.column.project(rows), e.count});
    return BinMatrix(rows.size(), std::move(out));
}

BinMatrix BinMatrix::remove_one(const Column & alpha) const
{
    if (multiplicity(alpha) == 0)
        throw Error("column " + alpha.to_string() + " is absent");
    BinMatrix out = *this;
    for (auto & e : out.entries_)
        if (e.column == alpha)
            --e.count;
    out.normalize();
    return out;
}

std::vector<Column> BinMatrix::expanded() const
{
    std::vector<Column> out;
    out.reserve(cols_);
    for (const auto & e : entries_)
        out.insert(out.end(), e.count, e.column);
    return out;
}

std::vector<std::size_t> BinMatrix::row_weights() const
{
    std::vector<std::size_t> w(rows_, 0);
    for (const auto & e : entries_)
        for (std::size_t i = 0; i < rows_; ++i)
            if (e.column[i])
                w[i] += e.count;
    return w;
}

bool BinMatrix::at(std::size_t row, std::size_t instance) const
{
    if (row >= rows_)
        throw Error("row " + std::to_string(row) + " out of range");
    for (const auto & e : entries_) {
        if (instance < e.count)
            return e.column[row];
        instance -= e.count;
    }
    throw Error("column instance out of range");
}

BinMatrix concat(const BinMatrix & m, const BinMatrix & n)
{
    if (m.rows() != n.rows())
        throw Error("row-count mismatch");
    std::vector<BinMatrix::Entry> all(m.entries().begin(), m.entries().end());
    all.insert(all.end(), n.entries().begin(), n.entries().end());
    return BinMatrix(m.rows(), std::move(all));
}

BinMatrix replicate(std::size_t k, const BinMatrix & m)
{
    std::vector<BinMatrix::Entry> out(m.entries().begin(), m.entries().end());
    for (auto & e : out)
        e.count *= k;
    return BinMatrix(m.rows(), std::move(out));
}

BinMatrix product(const BinMatrix & x, const BinMatrix & y)
{
    std::vector<BinMatrix::Entry> out;
    out.reserve(x.distinct() * y.distinct());
    for (const auto & ex : x.entries())
        for (const auto & ey : y.entries())
            out.push_back({ex.column.stacked(ey.column), ex.count * ey.count});
    return BinMatrix(x.rows() + y.rows(), std::move(out));
}

BinMatrix product(std::span<const BinMatrix> factors)
{
    if (factors.empty())
        throw Error("product needs at least one factor");
    BinMatrix acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i)
        acc = product(acc, factors[i]);
    return acc;
}

BinMatrix difference(const BinMatrix & m, const BinMatrix & n)
{
    if (m.rows() != n.rows())
        throw Error("row-count mismatch");
    std::vector<BinMatrix::Entry> out;
    for (const auto & e : m.entries()) {
        const std::size_t remove = n.multiplicity(e.column);
        if (remove > e.count)
            throw Error("difference: subtrahend is not a sub-multiset");
        out.push_back({e.column, e.count - remove});
    }
    for (const auto & e : n.entries())
        if (m.multiplicity(e.column) == 0)
            throw Error("difference: subtrahend is not a sub-multiset");
    return BinMatrix(m.rows(), std::move(out));
}

BinMatrix ones(std::size_t rows, std::size_t cols)
{
    return zeros(rows, cols).complement();
}

BinMatrix zeros(std::size_t rows, std::size_t cols)
{
    if (cols == 0)
        return BinMatrix(rows);
    return BinMatrix(rows, std::vector<BinMatrix::Entry>{{Column(rows), cols}});
}

BinMatrix build_standard(StandardKind kind, std::size_t size)
{
    if (size == 0)
        throw Error("standard matrices need size >= 1");
    std::vector<Column> cols;
    switch (kind) {
    case StandardKind::Identity:
    case StandardKind::IdentityComplement:
        for (std::size_t j = 0; j < size; ++j) {
            Column c(size);
            c.set(j, true);
            cols.push_back(kind == StandardKind::Identity ? c : c.complemented());
        }
        break;
    case StandardKind::Triangular:
        for (std::size_t j = 0; j < size; ++j) {
            Column c(size);
            for (std::size_t i = 0; i <= j; ++i)
                c.set(i, true);
            cols.push_back(c);
        }
        break;
    case StandardKind::Complete:
        if (size > 24)
            throw Error("K_k is limited to k <= 24");
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << size); ++v)
            cols.push_back(Column::from_index(size, v));
        break;
    }
    return BinMatrix(size, cols);
}

BinMatrix build_F(const FSpec & spec)
{
    if (spec.rows() == 0)
        throw Error("empty configuration");
    if (spec.t == 0)
        throw Error("replication t must be positive");
    const std::size_t m = spec.rows();
    Column left(m), right(m);
    std::size_t r = 0;
    for (std::size_t i = 0; i < spec.a; ++i, ++r) {
        left.set(r, true);
        right.set(r, true);
    }
    for (std::size_t i = 0; i < spec.b; ++i, ++r)
        left.set(r, true);
    for (std::size_t i = 0; i < spec.c; ++i, ++r)
        right.set(r, true);
    return replicate(spec.t, BinMatrix(m, {left, right}));
}

FSpec normalize(FSpec spec)
{
    if (spec.b < spec.c)
        std::swap(spec.b, spec.c);
    if (spec.a < spec.d)
        std::swap(spec.a, spec.d);
    return spec;
}

}  // namespace forbconf
