#pragma once

#include <forbconf/bin_matrix.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace forbconf {

/// Certificate for F being a configuration of A.
///
/// Column instances are numbered in canonical order with repeats expanded, as
/// returned by BinMatrix::expanded().
struct ContainmentWitness {
    std::vector<std::size_t> row_map;     // F row -> A row, injective
    std::vector<std::size_t> column_map;  // F column instance -> A column instance, injective

    bool operator==(const ContainmentWitness &) const = default;
};

/// A forbidden family together with the multiplicity bound t.
struct ConfigProblem {
    std::vector<BinMatrix> family;
    std::size_t t = 1;

    /// Throws unless the family is nonempty, t >= 1 and no member is empty.
    void validate() const;
};

/// A forbidden matrix F preprocessed for repeated containment queries.
///
/// The search branches on F's rows, most discriminating first (row weight
/// farthest from half the column count; ties by index). After every row
/// assignment the columns of F and of A are partitioned by their pattern on
/// the mapped rows. F columns can only be served by A columns of the same
/// pattern, so the column supply is feasible exactly when each pattern class
/// of F has no more instances than the matching class of A.
class Pattern {
public:
    explicit Pattern(BinMatrix f);

    [[nodiscard]] const BinMatrix & matrix() const noexcept { return f_; }

    [[nodiscard]] std::optional<ContainmentWitness> find_in(const BinMatrix & a) const;
    [[nodiscard]] std::optional<ContainmentWitness> find_in(
        std::size_t rows, std::span<const BinMatrix::Entry> a) const;

    /// Witnesses that use at least one instance of `last`, which must occur in `a`.
    [[nodiscard]] std::optional<ContainmentWitness> find_using(const BinMatrix & a, const Column & last) const;
    [[nodiscard]] std::optional<ContainmentWitness> find_using(
        std::size_t rows, std::span<const BinMatrix::Entry> a, const Column & last) const;

private:
    BinMatrix f_;
    std::vector<Column> cols_;
    std::vector<std::size_t> demand_;
    std::vector<std::size_t> row_order_;

    friend class PatternSearch;
};

/// F < A: some row and column permutation of F is a submatrix of A.
std::optional<ContainmentWitness> contains(const BinMatrix & a, const BinMatrix & f);

/// contains(a, f) restricted to witnesses that use an instance of `last`.
/// Throws if `last` does not occur in `a`.
std::optional<ContainmentWitness> contains_incremental(const BinMatrix & a, const BinMatrix & f, const Column & last);

/// A is t-simple and contains no member of the family.
bool avoids(const BinMatrix & a, const ConfigProblem & problem);

/// Exhaustive check over all injective row maps and column-instance
/// assignments. Test oracle; only practical for small inputs.
bool brute_force_contains(const BinMatrix & a, const BinMatrix & f);

/// Checks a witness directly against the entries of both matrices.
bool is_valid_witness(const BinMatrix & a, const BinMatrix & f, const ContainmentWitness & w);

/// F < G and G < F.
bool same_configuration(const BinMatrix & f, const BinMatrix & g);

}  // namespace forbconf
