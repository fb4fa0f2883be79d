#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>

namespace forbconf {

/// A (0,1)-column of at most 128 entries packed into two words.
///
/// Row 0 sits at the most significant bit of the first word, so comparing the
/// words lexicographically orders columns lexicographically with row 0 most
/// significant. That order is the canonical column order used everywhere.
/// Bits past `rows()` are always zero.
class Column {
public:
    static constexpr std::size_t max_rows = 128;

    Column() = default;
    explicit Column(std::size_t rows);

    /// Parses a string of '0'/'1' characters, row 0 first.
    static Column from_string(std::string_view bits);
    /// Builds an m-row column from the low m bits of `value`, row 0 taken from bit m-1.
    /// Requires m <= 64. Increasing `value` walks columns in canonical order.
    static Column from_index(std::size_t rows, std::uint64_t value);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }

    [[nodiscard]] bool operator[](std::size_t row) const noexcept
    {
        return (words_[row >> 6] >> (63 - (row & 63))) & 1U;
    }

    void set(std::size_t row, bool value) noexcept
    {
        const std::uint64_t mask = std::uint64_t{1} << (63 - (row & 63));
        if (value)
            words_[row >> 6] |= mask;
        else
            words_[row >> 6] &= ~mask;
    }

    [[nodiscard]] std::size_t weight() const noexcept;
    [[nodiscard]] Column complemented() const;
    [[nodiscard]] Column without_row(std::size_t row) const;
    /// This column on top of `below`.
    [[nodiscard]] Column stacked(const Column & below) const;
    /// Entries at the given rows, in the given order.
    [[nodiscard]] Column project(std::span<const std::size_t> rows) const;

    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] const std::array<std::uint64_t, 2> & words() const noexcept { return words_; }

    auto operator<=>(const Column &) const = default;
    bool operator==(const Column &) const = default;

private:
    std::array<std::uint64_t, 2> words_{};
    std::size_t rows_ = 0;

    void clear_padding() noexcept;
};

struct ColumnHash {
    std::size_t operator()(const Column & c) const noexcept
    {
        const auto & w = c.words();
        std::uint64_t h = w[0] * 0x9E3779B97F4A7C15ULL;
        h ^= (w[1] + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
        h ^= c.rows() * 0xC2B2AE3D27D4EB4FULL;
        return static_cast<std::size_t>(h);
    }
};

}  // namespace forbconf
