#include <forbconf/containment.hpp>
#include <forbconf/error.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace forbconf {

void ConfigProblem::validate() const
{
    if (family.empty())
        throw Error("forbidden family is empty");
    if (t == 0)
        throw Error("multiplicity bound t must be >= 1");
    for (const auto & f : family)
        if (f.empty())
            throw Error("empty configuration");
}

Pattern::Pattern(BinMatrix f) : f_(std::move(f))
{
    for (const auto & e : f_.entries()) {
        cols_.push_back(e.column);
        demand_.push_back(e.count);
    }
    const auto weights = f_.row_weights();
    const auto n = static_cast<std::int64_t>(f_.cols());
    row_order_.resize(f_.rows());
    std::iota(row_order_.begin(), row_order_.end(), std::size_t{0});
    auto skew = [&](std::size_t r) {
        const auto d = 2 * static_cast<std::int64_t>(weights[r]) - n;
        return d < 0 ? -d : d;
    };
    std::stable_sort(row_order_.begin(), row_order_.end(),
        [&](std::size_t x, std::size_t y) { return skew(x) > skew(y); });
}

namespace {

// Buffers reused across queries on the same thread.
struct SearchScratch {
    std::vector<std::size_t> demand;
    std::vector<std::size_t> supply;
    std::vector<std::uint32_t> f_class;  // (depth, F column), flat
    std::vector<std::uint32_t> f_raw;
    std::vector<std::vector<std::uint32_t>> a_index;
    std::vector<std::vector<std::uint32_t>> a_class;
    std::vector<std::size_t> forced_pos;
    std::vector<std::size_t> need;
    std::vector<std::size_t> have;
    std::vector<std::uint32_t> renumber;
    std::vector<std::size_t> row_map;
    std::vector<char> used;
};

thread_local SearchScratch scratch;

}  // namespace

class PatternSearch {
public:
    struct Forced {
        std::size_t f_index;
        std::size_t a_index;
    };

    PatternSearch(const Pattern & p, std::size_t a_rows, std::span<const BinMatrix::Entry> a)
        : p_(p), a_rows_(a_rows), a_(a), nf_(p.cols_.size()), s_(scratch)
    {
    }

    std::optional<ContainmentWitness> run(std::optional<Forced> forced)
    {
        forced_ = forced;
        const std::size_t rows = p_.f_.rows();
        if (rows > a_rows_)
            return std::nullopt;
        s_.demand.assign(p_.demand_.begin(), p_.demand_.end());
        s_.supply.resize(a_.size());
        std::size_t total_supply = 0;
        for (std::size_t k = 0; k < a_.size(); ++k) {
            s_.supply[k] = a_[k].count;
            total_supply += a_[k].count;
        }
        if (p_.f_.cols() > total_supply)
            return std::nullopt;
        if (forced_) {
            --s_.demand[forced_->f_index];
            --s_.supply[forced_->a_index];
        }
        s_.f_class.assign((rows + 1) * nf_, 0);
        s_.f_raw.resize(nf_);
        if (s_.a_index.size() < rows + 1) {
            s_.a_index.resize(rows + 1);
            s_.a_class.resize(rows + 1);
        }
        s_.a_index[0].resize(a_.size());
        s_.a_class[0].assign(a_.size(), 0);
        for (std::size_t k = 0; k < a_.size(); ++k)
            s_.a_index[0][k] = static_cast<std::uint32_t>(k);
        s_.forced_pos.assign(rows + 1, forced_ ? forced_->a_index : 0);
        s_.need.assign(2 * nf_ + 2, 0);
        s_.have.assign(2 * nf_ + 2, 0);
        s_.renumber.assign(2 * nf_ + 2, kAbsent);
        s_.row_map.assign(rows, 0);
        s_.used.assign(a_rows_, 0);
        if (!descend(0))
            return std::nullopt;
        return witness();
    }

private:
    static constexpr std::uint32_t kAbsent = UINT32_MAX;

    const Pattern & p_;
    std::size_t a_rows_;
    std::span<const BinMatrix::Entry> a_;
    std::size_t nf_;
    SearchScratch & s_;
    std::optional<Forced> forced_;

    bool descend(std::size_t depth)
    {
        if (depth == p_.f_.rows())
            return true;
        const std::size_t f_row = p_.row_order_[depth];
        for (std::size_t r = 0; r < a_rows_; ++r) {
            if (s_.used[r] || !refine(depth, f_row, r))
                continue;
            s_.used[r] = 1;
            s_.row_map[f_row] = r;
            if (descend(depth + 1))
                return true;
            s_.used[r] = 0;
        }
        return false;
    }

    // Splits every class by the bit on (f_row -> a_row) and checks supply
    // against demand per class; on success writes the level depth+1 state.
    bool refine(std::size_t depth, std::size_t f_row, std::size_t a_row)
    {
        const std::uint32_t * fc = s_.f_class.data() + depth * nf_;
        const auto & ai = s_.a_index[depth];
        const auto & ac = s_.a_class[depth];
        auto & f_raw = s_.f_raw;
        auto & need = s_.need;
        auto & have = s_.have;
        auto & renumber = s_.renumber;

        std::size_t raw_limit = 0;
        for (std::size_t j = 0; j < nf_; ++j) {
            f_raw[j] = 2 * fc[j] + (p_.cols_[j][f_row] ? 1U : 0U);
            raw_limit = std::max<std::size_t>(raw_limit, f_raw[j] + 1);
        }
        if (forced_) {
            // The forced A column must keep the forced F column's pattern.
            const std::size_t pos = s_.forced_pos[depth];
            const std::uint32_t a_raw = 2 * ac[pos] + (a_[forced_->a_index].column[a_row] ? 1U : 0U);
            if (a_raw != f_raw[forced_->f_index])
                return false;
        }

        for (std::size_t j = 0; j < nf_; ++j)
            need[f_raw[j]] += s_.demand[j];
        for (std::size_t q = 0; q < ai.size(); ++q) {
            const std::uint32_t raw = 2 * ac[q] + (a_[ai[q]].column[a_row] ? 1U : 0U);
            if (raw < raw_limit)
                have[raw] += s_.supply[ai[q]];
        }
        bool ok = true;
        for (std::size_t j = 0; j < nf_ && ok; ++j)
            ok = need[f_raw[j]] <= have[f_raw[j]];

        if (ok) {
            std::uint32_t next = 0;
            std::uint32_t * nfc = s_.f_class.data() + (depth + 1) * nf_;
            for (std::size_t j = 0; j < nf_; ++j) {
                if (renumber[f_raw[j]] == kAbsent)
                    renumber[f_raw[j]] = next++;
                nfc[j] = renumber[f_raw[j]];
            }
            auto & nai = s_.a_index[depth + 1];
            auto & nac = s_.a_class[depth + 1];
            nai.clear();
            nac.clear();
            for (std::size_t q = 0; q < ai.size(); ++q) {
                const std::uint32_t raw = 2 * ac[q] + (a_[ai[q]].column[a_row] ? 1U : 0U);
                if (raw < raw_limit && renumber[raw] != kAbsent) {
                    if (forced_ && ai[q] == forced_->a_index)
                        s_.forced_pos[depth + 1] = nai.size();
                    nai.push_back(ai[q]);
                    nac.push_back(renumber[raw]);
                }
            }
        }
        for (std::size_t j = 0; j < nf_; ++j) {
            need[f_raw[j]] = 0;
            have[f_raw[j]] = 0;
            renumber[f_raw[j]] = kAbsent;
        }
        for (std::size_t q = 0; q < ai.size(); ++q) {
            const std::uint32_t raw = 2 * ac[q] + (a_[ai[q]].column[a_row] ? 1U : 0U);
            if (raw < raw_limit)
                have[raw] = 0;
        }
        return ok;
    }

    ContainmentWitness witness() const
    {
        const std::size_t depth = p_.f_.rows();
        const std::uint32_t * fc = s_.f_class.data() + depth * nf_;
        const auto & ai = s_.a_index[depth];
        const auto & ac = s_.a_class[depth];

        std::vector<std::size_t> a_offset(a_.size() + 1, 0);
        for (std::size_t k = 0; k < a_.size(); ++k)
            a_offset[k + 1] = a_offset[k] + a_[k].count;
        std::vector<std::size_t> taken(a_.size(), 0);

        ContainmentWitness w;
        w.row_map = s_.row_map;
        w.column_map.reserve(p_.f_.cols());
        for (std::size_t j = 0; j < nf_; ++j) {
            std::size_t remaining = p_.demand_[j];
            if (forced_ && forced_->f_index == j) {
                w.column_map.push_back(a_offset[forced_->a_index]);
                ++taken[forced_->a_index];
                --remaining;
            }
            for (std::size_t q = 0; q < ai.size() && remaining > 0; ++q) {
                if (ac[q] != fc[j])
                    continue;
                const std::size_t k = ai[q];
                while (remaining > 0 && taken[k] < a_[k].count) {
                    w.column_map.push_back(a_offset[k] + taken[k]);
                    ++taken[k];
                    --remaining;
                }
            }
        }
        return w;
    }
};

std::optional<ContainmentWitness> Pattern::find_in(const BinMatrix & a) const
{
    return find_in(a.rows(), a.entries());
}

std::optional<ContainmentWitness> Pattern::find_in(std::size_t rows, std::span<const BinMatrix::Entry> a) const
{
    return PatternSearch(*this, rows, a).run(std::nullopt);
}

std::optional<ContainmentWitness> Pattern::find_using(const BinMatrix & a, const Column & last) const
{
    return find_using(a.rows(), a.entries(), last);
}

std::optional<ContainmentWitness> Pattern::find_using(
    std::size_t rows, std::span<const BinMatrix::Entry> a, const Column & last) const
{
    const auto it = std::find_if(a.begin(), a.end(), [&](const auto & e) { return e.column == last; });
    if (last.rows() != rows || it == a.end())
        throw Error("column " + last.to_string() + " does not occur in the matrix");
    const auto a_index = static_cast<std::size_t>(it - a.begin());
    PatternSearch search(*this, rows, a);
    for (std::size_t j = 0; j < cols_.size(); ++j) {
        auto w = search.run(PatternSearch::Forced{j, a_index});
        if (w)
            return w;
    }
    return std::nullopt;
}

std::optional<ContainmentWitness> contains(const BinMatrix & a, const BinMatrix & f)
{
    return Pattern(f).find_in(a);
}

std::optional<ContainmentWitness> contains_incremental(const BinMatrix & a, const BinMatrix & f, const Column & last)
{
    return Pattern(f).find_using(a, last);
}

bool avoids(const BinMatrix & a, const ConfigProblem & problem)
{
    if (!a.is_t_simple(problem.t))
        return false;
    return std::none_of(problem.family.begin(), problem.family.end(),
        [&](const BinMatrix & f) { return contains(a, f).has_value(); });
}

namespace {

struct BruteForce {
    std::vector<Column> a_cols;
    std::vector<Column> f_cols;
    std::size_t a_rows;
    std::size_t f_rows;
    std::vector<std::size_t> row_map;
    std::vector<bool> row_used;
    std::vector<bool> col_used;

    bool rows_from(std::size_t i)
    {
        if (i == f_rows)
            return cols_from(0);
        for (std::size_t r = 0; r < a_rows; ++r) {
            if (row_used[r])
                continue;
            row_used[r] = true;
            row_map[i] = r;
            const bool found = rows_from(i + 1);
            row_used[r] = false;
            if (found)
                return true;
        }
        return false;
    }

    bool cols_from(std::size_t j)
    {
        if (j == f_cols.size())
            return true;
        for (std::size_t k = 0; k < a_cols.size(); ++k) {
            if (col_used[k])
                continue;
            bool match = true;
            for (std::size_t i = 0; i < f_rows && match; ++i)
                match = f_cols[j][i] == a_cols[k][row_map[i]];
            if (!match)
                continue;
            col_used[k] = true;
            const bool found = cols_from(j + 1);
            col_used[k] = false;
            if (found)
                return true;
        }
        return false;
    }
};

}  // namespace

bool brute_force_contains(const BinMatrix & a, const BinMatrix & f)
{
    if (f.rows() > a.rows() || f.cols() > a.cols())
        return false;
    BruteForce bf{a.expanded(), f.expanded(), a.rows(), f.rows(), std::vector<std::size_t>(f.rows()),
        std::vector<bool>(a.rows(), false), std::vector<bool>(a.cols(), false)};
    return bf.rows_from(0);
}

bool is_valid_witness(const BinMatrix & a, const BinMatrix & f, const ContainmentWitness & w)
{
    if (w.row_map.size() != f.rows() || w.column_map.size() != f.cols())
        return false;
    std::vector<bool> row_seen(a.rows(), false), col_seen(a.cols(), false);
    for (auto r : w.row_map) {
        if (r >= a.rows() || row_seen[r])
            return false;
        row_seen[r] = true;
    }
    for (auto c : w.column_map) {
        if (c >= a.cols() || col_seen[c])
            return false;
        col_seen[c] = true;
    }
    const auto a_cols = a.expanded();
    const auto f_cols = f.expanded();
    for (std::size_t j = 0; j < f_cols.size(); ++j)
        for (std::size_t i = 0; i < f.rows(); ++i)
            if (f_cols[j][i] != a_cols[w.column_map[j]][w.row_map[i]])
                return false;
    return true;
}

bool same_configuration(const BinMatrix & f, const BinMatrix & g)
{
    return f.rows() == g.rows() && f.cols() == g.cols() && contains(g, f).has_value() && contains(f, g).has_value();
}

}  // namespace forbconf
