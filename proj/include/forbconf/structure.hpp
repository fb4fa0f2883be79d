#pragma once

#include <forbconf/bin_matrix.hpp>
#include <forbconf/containment.hpp>

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace forbconf {

/// Sorted 0-based row indices.
using RowSet = std::vector<std::size_t>;

/// Columns of A grouped by column sum.
std::map<std::size_t, BinMatrix> split_layers(const BinMatrix & a);

/// Split of A at row r. Columns of A with 0 at r are [B | C] and those with 1
/// at r are [C | D], all with row r deleted; C collects, for every column seen
/// at least t times across both sides, the smaller of its two multiplicities.
struct RowDecomposition {
    std::size_t row = 0;
    BinMatrix b;
    BinMatrix c;
    BinMatrix d;

    /// [B C D]
    [[nodiscard]] BinMatrix bcd() const;
};

/// Requires t >= 2 and A (t-1)-simple.
RowDecomposition decompose_row(const BinMatrix & a, std::size_t row, std::size_t t);

/// The family forbidden on C by the inductive bound: the minimal row-deletions
/// F' of members F with F < [0 1] x F', followed by supp(F) for every F.
/// The returned problem has t = 1.
ConfigProblem inductive_children(const ConfigProblem & p);

enum class LayerStatus { Classified, Absent, Indeterminate };

template <class T>
struct LayerResult {
    LayerStatus status = LayerStatus::Absent;
    std::optional<T> value;
};

/// Sunflower (kind 1, [I; J; 0]) or inverse sunflower (kind 2, [I^c; J; 0])
/// up to row and column permutation.
struct SunflowerClass {
    int kind = 1;
    RowSet petals;  // one row per column
    RowSet center;  // all ones
    RowSet zeros;   // all zeros

    bool operator==(const SunflowerClass &) const = default;
};

/// Layers with fewer than 3 columns are reported indeterminate.
/// Throws when column sums differ or X has repeated columns.
LayerResult<SunflowerClass> classify_sunflower(const BinMatrix & x);

/// Rebuilds the layer described by a sunflower classification on `rows` rows.
BinMatrix realize_sunflower(const SunflowerClass & s, std::size_t rows);

/// Every column has exactly a ones in rows_c and exactly b zeros in rows_d.
struct TypeAB {
    std::size_t a = 0;
    std::size_t b = 0;
    RowSet rows_c;
    RowSet rows_d;

    bool operator==(const TypeAB &) const = default;
};

bool has_type(const BinMatrix & x, const TypeAB & type);

/// Exhaustive over a = 0..k-1 and all row bipartitions; limited to 16 rows.
/// Empty X is indeterminate.
LayerResult<TypeAB> classify_type_ab(const BinMatrix & x, std::size_t k);

/// Bipartite graph on a-subsets of rows_c and b-subsets of rows_d; each
/// column contributes the edge (its ones in rows_c, its zeros in rows_d).
/// Only vertices with at least one edge are stored.
struct LayerGraph {
    std::size_t a = 0;
    std::size_t b = 0;
    std::vector<std::pair<RowSet, RowSet>> edges;  // sorted, unique

    [[nodiscard]] std::map<RowSet, std::size_t> left_degrees() const;
    [[nodiscard]] std::map<RowSet, std::size_t> right_degrees() const;
    [[nodiscard]] std::size_t vertex_count() const;
};

/// Requires a, b >= 1 and `type` valid for X.
LayerGraph build_layer_graph(const BinMatrix & x, const TypeAB & type);

/// Repeatedly drops left vertices of degree < (b + 1/2) m^(b-1) and right
/// vertices of degree < (a + 1/2) m^(a-1) until none remain.
LayerGraph prune_layer_graph(const LayerGraph & g, std::size_t a, std::size_t b, std::size_t m);

/// Thresholds of the stability statement. Far above desk scale, so they are
/// reported against rather than enforced.
struct StabilityParams {
    /// Default (6(k-1))^(5k+2).
    std::function<long double(std::size_t k)> size_coefficient;
    /// Default k - 3.
    std::optional<long> loss_exponent;
};

struct StableSublayer {
    BinMatrix layer;
    TypeAB type;
    std::size_t loss = 0;
    /// loss <= m^loss_exponent
    bool loss_within_bound = false;
    /// |Y| >= size_coefficient(k) * m^(k-2)
    bool premise_met = false;
    long double premise_threshold = 0;
};

/// Largest column subset of Y admitting a type (a,b) with a + b = k - 1.
/// Empty Y gives nullopt. Limited to 16 rows.
std::optional<StableSublayer> stable_sublayer(const BinMatrix & y, std::size_t k, const StabilityParams & params = {});

}  // namespace forbconf
