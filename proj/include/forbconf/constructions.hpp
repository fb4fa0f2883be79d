#pragma once

#include <forbconf/bin_matrix.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace forbconf {

enum class Factor { I, Ic, T };

/// A p-fold product of standard matrices, each with `block` rows.
/// Text form: factors joined by 'x', then '@' and the block size, e.g. "IxIcxT@5".
struct ProductSpec {
    std::vector<Factor> factors;
    std::size_t block = 1;

    [[nodiscard]] std::size_t rows() const noexcept { return factors.size() * block; }
    [[nodiscard]] std::string to_string() const;
    static ProductSpec parse(std::string_view text);

    bool operator==(const ProductSpec &) const = default;
};

/// The product matrix; block^p columns on p * block rows.
BinMatrix realize(const ProductSpec & spec);

struct XValueResult {
    /// False when every p <= p_max still had an avoiding product.
    bool decided = false;
    std::size_t x = 0;
    /// A failing choice at p = x - 1 (present whenever x >= 2).
    std::optional<ProductSpec> avoiding_spec;
    /// Block size the decision was made at; the check is repeated at block + 1.
    std::size_t block_used = 0;
    std::size_t m_used = 0;
    /// Whether the decision at block + 1 agreed.
    bool stable = true;
};

/// Block size used by x_value: max(rows * cols + 1, rows + 1) for a rows x cols F.
std::size_t x_value_block(const BinMatrix & f);

/// Least p such that F is a configuration of all 3^p products over {I, I^c, T}.
XValueResult x_value(const BinMatrix & f, std::size_t p_max = 4);

/// x_value(f).x - 1; throws when x_value is undecided.
std::size_t predicted_exponent(const BinMatrix & f, std::size_t p_max = 4);

/// Lower-bound product for t * F_{a,b,c,d} (a >= d, b >= c) from the classification
/// of two-columned configurations:
///   b > c or a,b >= 1 : (a+b)-fold I product for t >= 2, (a+b-1)-fold for t = 1
///   F_{a,0,0,d}       : a-fold I product
///   F_{0,b,b,0}       : (b-1)-fold I product times T
ProductSpec table1_construction(const FSpec & spec, std::size_t block);

}  // namespace forbconf
