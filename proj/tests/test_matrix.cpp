#include "support.hpp"

#include <forbconf/bin_matrix.hpp>
#include <forbconf/containment.hpp>
#include <forbconf/error.hpp>
#include <forbconf/matrix_io.hpp>

#include <doctest.h>

#include <random>

using namespace forbconf;
using forbconf::testing::col;

namespace {

// The 3-simple 2x6 example and its support.
BinMatrix display_m()
{
    return BinMatrix::from_rows({"010110", "101101"});
}

}  // namespace

TEST_CASE("column order puts row 0 first")
{
    CHECK(col("011") < col("100"));
    CHECK(col("000") < col("001"));
    CHECK(Column::from_index(3, 5) == col("101"));
    for (std::uint64_t v = 0; v + 1 < 16; ++v)
        CHECK(Column::from_index(4, v) < Column::from_index(4, v + 1));
    CHECK(col("1011").weight() == 3);
    CHECK(col("1011").complemented() == col("0100"));
    CHECK(col("1011").without_row(1) == col("111"));
    CHECK_THROWS_AS(static_cast<void>(col("10").without_row(2)), Error);
    CHECK_THROWS_AS(Column::from_string("102"), Error);
}

TEST_CASE("columns wider than one word")
{
    std::string bits(100, '0');
    bits[70] = '1';
    bits[3] = '1';
    const auto c = Column::from_string(bits);
    CHECK(c.rows() == 100);
    CHECK(c[70]);
    CHECK(c[3]);
    CHECK_FALSE(c[69]);
    CHECK(c.weight() == 2);
    CHECK(c.to_string() == bits);
    CHECK(c.complemented().weight() == 98);
    CHECK_THROWS_AS(Column(129), Error);
}

TEST_CASE("multiplicity")
{
    const auto m = display_m();
    CHECK(m.multiplicity(col("01")) == 3);
    CHECK(build_standard(StandardKind::Identity, 2).multiplicity(col("11")) == 0);
    CHECK(replicate(2, BinMatrix::from_rows({"1", "0"})).multiplicity(col("10")) == 2);
    CHECK_THROWS_WITH_AS(static_cast<void>(m.multiplicity(col("011"))), "row-count mismatch", Error);
}

TEST_CASE("t-simple")
{
    CHECK(display_m().is_t_simple(3));
    CHECK_FALSE(display_m().is_t_simple(2));
    CHECK(build_standard(StandardKind::Identity, 4).is_t_simple(1));
}

TEST_CASE("support")
{
    CHECK(display_m().support() == BinMatrix::from_rows({"011", "101"}));
    const auto i3 = build_standard(StandardKind::Identity, 3);
    CHECK(i3.support() == i3);
    CHECK(replicate(4, BinMatrix::from_rows({"1", "1"})).support() == BinMatrix::from_rows({"1", "1"}));
}

TEST_CASE("complement")
{
    const auto i2 = build_standard(StandardKind::Identity, 2);
    CHECK(i2.complement() == BinMatrix::from_rows({"01", "10"}));
    CHECK(i2.complement() == build_standard(StandardKind::IdentityComplement, 2));
    CHECK(zeros(3, 1).complement() == ones(3, 1));
    for (std::size_t b = 1; b <= 2; ++b) {
        const auto f = build_F({0, b, b, 0});
        CHECK(same_configuration(f, f.complement()));
    }
}

TEST_CASE("concat and replicate")
{
    const auto two = replicate(2, BinMatrix::from_rows({"1", "0"}));
    CHECK(two.cols() == 2);
    CHECK(two.distinct() == 1);

    const auto c = concat(build_standard(StandardKind::Identity, 2), build_standard(StandardKind::IdentityComplement, 2));
    CHECK(c.rows() == 2);
    CHECK(c.cols() == 4);
    CHECK(c.multiplicity(col("10")) == 2);
    CHECK(c.multiplicity(col("01")) == 2);
    CHECK(c.multiplicity(col("00")) == 0);
    CHECK(c.multiplicity(col("11")) == 0);

    for (std::size_t t = 1; t <= 3; ++t)
        for (std::size_t k = 1; k <= 3; ++k)
            CHECK(build_F({0, k, k, 0, t}).cols() == 2 * t);
    CHECK_THROWS_AS(concat(BinMatrix(2), BinMatrix(3)), Error);
}

TEST_CASE("product")
{
    const auto row = BinMatrix::from_rows({"01"});
    CHECK(product(row, row) == build_standard(StandardKind::Complete, 2));

    const auto i2 = build_standard(StandardKind::Identity, 2);
    const auto ii = product(i2, i2);
    CHECK(ii.rows() == 4);
    CHECK(ii.cols() == 4);
    for (const auto & e : ii.entries())
        CHECK(e.column.weight() == 2);

    const auto it = product(build_standard(StandardKind::Identity, 3), build_standard(StandardKind::Triangular, 3));
    CHECK(it.cols() == 9);
    CHECK(it.rows() == 6);

    // multiplicities multiply
    const auto x = replicate(2, BinMatrix::from_rows({"1"}));
    const auto y = replicate(3, BinMatrix::from_rows({"0"}));
    CHECK(product(x, y).multiplicity(col("10")) == 6);
}

TEST_CASE("standard matrices")
{
    CHECK(build_standard(StandardKind::Triangular, 3) == BinMatrix(3, {col("100"), col("110"), col("111")}));
    const auto t4 = build_standard(StandardKind::Triangular, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(t4.at(i, j) == (i <= j));
    CHECK(build_standard(StandardKind::Complete, 2).cols() == 4);
    CHECK(build_standard(StandardKind::Complete, 5).distinct() == 32);
    CHECK(build_standard(StandardKind::IdentityComplement, 1) == BinMatrix::from_rows({"0"}));
    CHECK(build_standard(StandardKind::Identity, 3) == BinMatrix::from_rows({"100", "010", "001"}));
    CHECK_THROWS_AS(build_standard(StandardKind::Identity, 0), Error);
}

TEST_CASE("two-columned configurations")
{
    CHECK(build_F({0, 2, 2, 0}) == BinMatrix(4, {col("1100"), col("0011")}));
    CHECK(build_F({0, 1, 1, 0}) == build_standard(StandardKind::Identity, 2));
    const auto f = build_F({1, 1, 0, 0, 2});
    CHECK(f.cols() == 4);
    CHECK(f.multiplicity(col("11")) == 2);
    CHECK(f.multiplicity(col("10")) == 2);
    // row order [11]s, [10]s, [01]s, [00]s
    CHECK(build_F({1, 1, 1, 1}) == BinMatrix::from_rows({"11", "10", "01", "00"}));
    CHECK_THROWS_WITH_AS(build_F({0, 0, 0, 0}), "empty configuration", Error);

    CHECK(normalize({0, 1, 2, 3, 2}) == FSpec{3, 2, 1, 0, 2});
    CHECK(normalize({2, 2, 1, 0}) == FSpec{2, 2, 1, 0});
    // normalizing keeps the configuration up to complement
    const FSpec raw{0, 1, 2, 3, 2};
    CHECK(same_configuration(build_F(raw).complement(), build_F(normalize(raw))));
    const FSpec swapped{1, 0, 2, 0};
    CHECK(same_configuration(build_F(swapped), build_F(normalize(swapped))));
}

TEST_CASE("difference and removal")
{
    const auto m = display_m();
    const auto d = difference(m, BinMatrix::from_rows({"0", "1"}));
    CHECK(d.cols() == 5);
    CHECK(d.multiplicity(col("01")) == 2);
    CHECK_THROWS_AS(difference(m, BinMatrix::from_rows({"0", "0"})), Error);
    CHECK(m.remove_one(col("01")).multiplicity(col("01")) == 2);
    CHECK(m.remove_one(col("11")).multiplicity(col("11")) == 0);
    CHECK_THROWS_AS(static_cast<void>(m.remove_one(col("00"))), Error);
}

TEST_CASE("matrix-level properties on random matrices")
{
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rows = 1 + rng() % 6;
        const auto a = forbconf::testing::random_matrix(rng, rows, rng() % 8);
        const auto b = forbconf::testing::random_matrix(rng, rows, rng() % 8);
        CHECK(concat(a, b).cols() == a.cols() + b.cols());
        CHECK(product(a, b).cols() == a.cols() * b.cols());
        CHECK(a.support().support() == a.support());
        CHECK(a.complement().complement() == a);
        for (std::size_t t = 1; t <= 3; ++t)
            if (a.is_t_simple(t))
                CHECK(a.is_t_simple(t + 1));
        CHECK((a.support() == a) == a.is_t_simple(1));
        CHECK(parse_matrix(format_matrix(a)) == a);
    }
}

TEST_CASE("text format")
{
    CHECK(parse_matrix("2 2\n10\n01\n") == build_standard(StandardKind::Identity, 2));
    CHECK(parse_matrix("# identity\n2 2\n# first row\n10\n\n01\n") == build_standard(StandardKind::Identity, 2));
    CHECK(format_matrix(BinMatrix::from_rows({"01", "10"})) == "2 2\n01\n10\n");
    CHECK(format_matrix(display_m()) == "2 6\n000111\n111001\n");
    CHECK(parse_matrix("3 0\n") == BinMatrix(3));

    CHECK_THROWS_WITH_AS(parse_matrix("2 2\n10\n0\n"), "ragged row at line 3", Error);
    CHECK_THROWS_WITH_AS(parse_matrix("2 x\n10\n01\n"), "malformed header at line 1", Error);
    CHECK_THROWS_WITH_AS(parse_matrix("2 2\n10\n0a\n"), "illegal character 'a' at line 3", Error);
    CHECK_THROWS_WITH_AS(parse_matrix("2 2\n10\n01\n11\n"), "unexpected extra row at line 4", Error);
    CHECK_THROWS_WITH_AS(parse_matrix("3 2\n10\n01\n"), "expected 3 rows, found 2 after line 3", Error);
    CHECK_THROWS_AS(parse_matrix(""), Error);
    CHECK_THROWS_AS(read_matrix_file("/nonexistent/matrix.txt"), Error);
}

TEST_CASE("row operations")
{
    const auto t3 = build_standard(StandardKind::Triangular, 3);
    CHECK(t3.without_row(0) == BinMatrix(2, {col("00"), col("10"), col("11")}));
    const std::vector<std::size_t> rows{2, 0};
    CHECK(t3.restrict_rows(rows) == BinMatrix(2, {col("01"), col("01"), col("11")}));
    CHECK(t3.row_weights() == std::vector<std::size_t>{3, 2, 1});
    CHECK_THROWS_AS(static_cast<void>(t3.without_row(3)), Error);
    CHECK_THROWS_AS(BinMatrix(129), Error);
}
