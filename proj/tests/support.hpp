#pragma once

#include <forbconf/bin_matrix.hpp>
#include <forbconf/containment.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace forbconf::testing {

inline Column col(const char * bits)
{
    return Column::from_string(bits);
}

inline BinMatrix random_matrix(std::mt19937_64 & rng, std::size_t rows, std::size_t cols)
{
    std::vector<Column> out;
    std::bernoulli_distribution bit(0.5);
    for (std::size_t j = 0; j < cols; ++j) {
        Column c(rows);
        for (std::size_t i = 0; i < rows; ++i)
            c.set(i, bit(rng));
        out.push_back(c);
    }
    return BinMatrix(rows, out);
}

// Random matrix with every multiplicity at most t.
inline BinMatrix random_t_simple(std::mt19937_64 & rng, std::size_t rows, std::size_t t)
{
    std::uniform_int_distribution<std::size_t> mult(0, t);
    std::vector<BinMatrix::Entry> entries;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << rows); ++v)
        if (const auto k = mult(rng); k > 0)
            entries.push_back({Column::from_index(rows, v), k});
    return BinMatrix(rows, entries);
}

struct BruteMax {
    std::size_t value = 0;
    BinMatrix witness;
    std::size_t maxima = 0;
};

// Every t-simple matrix on m rows, checked with the brute-force oracle.
// Keeps the lexicographically least maximum (expanded column sequence).
inline BruteMax brute_force_forb(std::size_t m, const std::vector<BinMatrix> & family, std::size_t t)
{
    const std::size_t n = std::size_t{1} << m;
    std::vector<std::size_t> mult(n, 0);
    BruteMax best;
    std::optional<std::vector<Column>> best_cols;
    while (true) {
        std::vector<BinMatrix::Entry> entries;
        for (std::size_t v = 0; v < n; ++v)
            if (mult[v] > 0)
                entries.push_back({Column::from_index(m, v), mult[v]});
        const BinMatrix a(m, entries);
        bool ok = true;
        for (const auto & f : family)
            ok = ok && !brute_force_contains(a, f);
        if (ok) {
            const auto cols = a.expanded();
            if (!best_cols || a.cols() > best.value) {
                best.value = a.cols();
                best.witness = a;
                best.maxima = 1;
                best_cols = cols;
            } else if (a.cols() == best.value) {
                ++best.maxima;
                if (cols < *best_cols) {
                    best.witness = a;
                    best_cols = cols;
                }
            }
        }
        std::size_t i = 0;
        while (i < n && mult[i] == t)
            mult[i++] = 0;
        if (i == n)
            break;
        ++mult[i];
    }
    return best;
}

}  // namespace forbconf::testing
