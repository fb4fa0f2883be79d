#include <forbconf/column.hpp>
#include <forbconf/error.hpp>

#include <bit>

namespace forbconf {

Column::Column(std::size_t rows) : rows_(rows)
{
    if (rows > max_rows)
        throw Error("column has " + std::to_string(rows) + " rows; at most 128 are supported");
}

Column Column::from_string(std::string_view bits)
{
    Column c(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            c.set(i, true);
        else if (bits[i] != '0')
            throw Error("illegal character '" + std::string(1, bits[i]) + "' in column");
    }
    return c;
}

Column Column::from_index(std::size_t rows, std::uint64_t value)
{
    if (rows > 64)
        throw Error("from_index supports at most 64 rows");
    Column c(rows);
    if (rows > 0)
        c.words_[0] = value << (64 - rows);
    return c;
}

std::size_t Column::weight() const noexcept
{
    return static_cast<std::size_t>(std::popcount(words_[0]) + std::popcount(words_[1]));
}

Column Column::complemented() const
{
    Column c = *this;
    c.words_[0] = ~c.words_[0];
    c.words_[1] = ~c.words_[1];
    c.clear_padding();
    return c;
}

Column Column::without_row(std::size_t row) const
{
    if (row >= rows_)
        throw Error("row " + std::to_string(row) + " out of range");
    Column c(rows_ - 1);
    std::size_t out = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i == row)
            continue;
        c.set(out++, (*this)[i]);
    }
    return c;
}

Column Column::stacked(const Column & below) const
{
    Column c(rows_ + below.rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        c.set(i, (*this)[i]);
    for (std::size_t i = 0; i < below.rows_; ++i)
        c.set(rows_ + i, below[i]);
    return c;
}

Column Column::project(std::span<const std::size_t> rows) const
{
    Column c(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        c.set(i, (*this)[rows[i]]);
    return c;
}

std::string Column::to_string() const
{
    std::string s(rows_, '0');
    for (std::size_t i = 0; i < rows_; ++i)
        if ((*this)[i])
            s[i] = '1';
    return s;
}

void Column::clear_padding() noexcept
{
    if (rows_ >= 128)
        return;
    if (rows_ <= 64) {
        words_[1] = 0;
        words_[0] = rows_ == 0 ? 0 : words_[0] & (~std::uint64_t{0} << (64 - rows_));
    } else {
        words_[1] &= ~std::uint64_t{0} << (128 - rows_);
    }
}

}  // namespace forbconf
