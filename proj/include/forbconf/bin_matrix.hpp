#pragma once

#include <forbconf/column.hpp>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace forbconf {

/// An m-rowed (0,1)-matrix held as a multiset of columns.
///
/// Distinct columns are kept in canonical order, each with a positive
/// multiplicity. Values are immutable once built; every operation returns a
/// new matrix.
class BinMatrix {
public:
    struct Entry {
        Column column;
        std::size_t count = 0;

        bool operator==(const Entry &) const = default;
    };

    BinMatrix() = default;
    /// Empty matrix (no columns) on `rows` rows.
    explicit BinMatrix(std::size_t rows);
    /// Multiset of the given column instances.
    BinMatrix(std::size_t rows, std::span<const Column> columns);
    BinMatrix(std::size_t rows, std::initializer_list<Column> columns);
    /// Entries may repeat a column; counts are merged and zero counts dropped.
    BinMatrix(std::size_t rows, std::vector<Entry> entries);

    /// Builds from row strings, e.g. {"10", "01"} for I_2. All rows need equal length.
    static BinMatrix from_rows(std::span<const std::string> rows);
    static BinMatrix from_rows(std::initializer_list<std::string> rows);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    /// Total column count, multiplicities included.
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t distinct() const noexcept { return entries_.size(); }
    [[nodiscard]] bool empty() const noexcept { return cols_ == 0; }
    [[nodiscard]] std::span<const Entry> entries() const noexcept { return entries_; }

    /// mu(alpha, M); throws "row-count mismatch" on a column of the wrong length.
    [[nodiscard]] std::size_t multiplicity(const Column & alpha) const;
    [[nodiscard]] std::size_t max_multiplicity() const noexcept;
    [[nodiscard]] bool is_t_simple(std::size_t t) const noexcept;

    [[nodiscard]] BinMatrix support() const;
    [[nodiscard]] BinMatrix complement() const;
    [[nodiscard]] BinMatrix without_row(std::size_t row) const;
    /// Keeps the given rows in the given order.
    [[nodiscard]] BinMatrix restrict_rows(std::span<const std::size_t> rows) const;
    /// Drops one instance of `alpha`; throws if absent.
    [[nodiscard]] BinMatrix remove_one(const Column & alpha) const;

    /// Column instances in canonical order, repeated by multiplicity.
    [[nodiscard]] std::vector<Column> expanded() const;
    /// Number of ones in each row, counted over all column instances.
    [[nodiscard]] std::vector<std::size_t> row_weights() const;
    /// Entry (row, j) where j indexes the expanded column instances.
    [[nodiscard]] bool at(std::size_t row, std::size_t instance) const;

    bool operator==(const BinMatrix &) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Entry> entries_;

    void normalize();
};

/// [M | N]: multiplicities add.
BinMatrix concat(const BinMatrix & m, const BinMatrix & n);
/// k * M.
BinMatrix replicate(std::size_t k, const BinMatrix & m);
/// X x Y: every column of X placed on top of every column of Y.
BinMatrix product(const BinMatrix & x, const BinMatrix & y);
/// Left fold of the 2-fold product; requires at least one factor.
BinMatrix product(std::span<const BinMatrix> factors);
/// Multiset difference M \ N; throws if N is not a sub-multiset of M.
BinMatrix difference(const BinMatrix & m, const BinMatrix & n);

/// J_{rows x cols}.
BinMatrix ones(std::size_t rows, std::size_t cols);
/// 0_{rows x cols}.
BinMatrix zeros(std::size_t rows, std::size_t cols);

enum class StandardKind { Identity, IdentityComplement, Triangular, Complete };

/// I_k, I_k^c, T_k (entry (i,j) is 1 iff i <= j) or K_k (all 2^k columns, k <= 24).
BinMatrix build_standard(StandardKind kind, std::size_t size);

/// Parameters of t * F_{a,b,c,d}: a rows [1 1], b rows [1 0], c rows [0 1], d rows [0 0].
struct FSpec {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t c = 0;
    std::size_t d = 0;
    std::size_t t = 1;

    [[nodiscard]] std::size_t rows() const noexcept { return a + b + c + d; }
    bool operator==(const FSpec &) const = default;
};

/// t * F_{a,b,c,d} with rows ordered [1 1]s, [1 0]s, [0 1]s, [0 0]s.
BinMatrix build_F(const FSpec & spec);

/// Swaps into the form b >= c, a >= d (column swap, then 0/1 complement).
FSpec normalize(FSpec spec);

}  // namespace forbconf
