#include <forbconf/constructions.hpp>
#include <forbconf/containment.hpp>
#include <forbconf/error.hpp>

#include <doctest.h>

using namespace forbconf;

namespace {

std::vector<ProductSpec> all_products(std::size_t p, std::size_t block)
{
    std::vector<ProductSpec> out{ProductSpec{{}, block}};
    for (std::size_t i = 0; i < p; ++i) {
        std::vector<ProductSpec> next;
        for (const auto & s : out)
            for (auto f : {Factor::I, Factor::Ic, Factor::T}) {
                auto t = s;
                t.factors.push_back(f);
                next.push_back(t);
            }
        out = next;
    }
    return out;
}

bool in_every_product(const BinMatrix & f, std::size_t p, std::size_t block)
{
    for (const auto & s : all_products(p, block))
        if (!brute_force_contains(realize(s), f))
            return false;
    return true;
}

}  // namespace

TEST_CASE("product specs")
{
    const auto s = ProductSpec::parse("IxIcxT@5");
    CHECK(s.factors == std::vector<Factor>{Factor::I, Factor::Ic, Factor::T});
    CHECK(s.block == 5);
    CHECK(s.rows() == 15);
    CHECK(s.to_string() == "IxIcxT@5");
    CHECK(ProductSpec::parse("T@1").to_string() == "T@1");
    CHECK_THROWS_AS(ProductSpec::parse("IxI"), Error);
    CHECK_THROWS_AS(ProductSpec::parse("IxJ@3"), Error);
    CHECK_THROWS_AS(ProductSpec::parse("I@0"), Error);
    CHECK_THROWS_AS(ProductSpec::parse("I@x"), Error);
    CHECK_THROWS_AS(ProductSpec::parse("@3"), Error);
}

TEST_CASE("realize")
{
    const auto ii = realize(ProductSpec::parse("IxI@2"));
    const auto i2 = build_standard(StandardKind::Identity, 2);
    CHECK(ii == product(i2, i2));
    CHECK(ii.rows() == 4);
    CHECK(ii.cols() == 4);

    const auto it = realize(ProductSpec::parse("IxT@3"));
    CHECK(it.rows() == 6);
    CHECK(it.cols() == 9);

    CHECK(realize(ProductSpec::parse("T@4")) == build_standard(StandardKind::Triangular, 4));
    for (std::size_t block = 1; block <= 4; ++block)
        CHECK(realize(ProductSpec::parse("IcxTxI@" + std::to_string(block))).cols() == block * block * block);
    CHECK_THROWS_AS(realize(ProductSpec{{}, 3}), Error);
}

TEST_CASE("x values")
{
    const auto one = x_value(BinMatrix::from_rows({"1"}));
    CHECK(one.decided);
    CHECK(one.x == 1);
    CHECK_FALSE(one.avoiding_spec);
    CHECK(one.stable);

    const auto f0110 = x_value(build_F({0, 1, 1, 0}));
    CHECK(f0110.decided);
    CHECK(f0110.x == 2);
    REQUIRE(f0110.avoiding_spec);
    CHECK(f0110.avoiding_spec->factors == std::vector<Factor>{Factor::T});
    CHECK(f0110.stable);

    const auto k2 = x_value(build_standard(StandardKind::Complete, 2));
    CHECK(k2.x == 2);
    REQUIRE(k2.avoiding_spec);
    CHECK(k2.avoiding_spec->factors == std::vector<Factor>{Factor::I});
    CHECK(k2.stable);
    CHECK(k2.block_used == x_value_block(build_standard(StandardKind::Complete, 2)));
    CHECK(k2.block_used == 9);

    CHECK(predicted_exponent(build_F({0, 1, 1, 0})) == 1);
    CHECK(predicted_exponent(build_standard(StandardKind::Complete, 3)) == 2);
    CHECK(predicted_exponent(BinMatrix::from_rows({"1"})) == 0);

    // K_3 is in no 2-fold product, so p_max = 2 is undecided
    const auto undecided = x_value(build_standard(StandardKind::Complete, 3), 2);
    CHECK_FALSE(undecided.decided);
    CHECK_THROWS_AS(predicted_exponent(build_standard(StandardKind::Complete, 3), 2), Error);
    CHECK_THROWS_AS(x_value(BinMatrix(2)), Error);
}

TEST_CASE("x value decisions match brute force")
{
    // F_{0,1,1,0} = I_2: T avoids it; all nine 2-fold products contain it
    const auto i2 = build_F({0, 1, 1, 0});
    const std::size_t block = x_value_block(i2);
    CHECK_FALSE(brute_force_contains(realize(ProductSpec{{Factor::T}, block}), i2));
    CHECK(in_every_product(i2, 2, block));

    // K_2: I avoids it; all 2-fold products contain it (block kept small for the oracle)
    const auto k2 = build_standard(StandardKind::Complete, 2);
    CHECK_FALSE(brute_force_contains(realize(ProductSpec{{Factor::I}, 4}), k2));
    CHECK(in_every_product(k2, 2, 3));

    CHECK(in_every_product(BinMatrix::from_rows({"1"}), 1, 2));
}

TEST_CASE("x value result invariants")
{
    for (const auto & f : {build_F({0, 1, 1, 0}), build_F({1, 1, 0, 0}), build_F({0, 2, 1, 0}),
             build_standard(StandardKind::Complete, 2), build_standard(StandardKind::Triangular, 2)}) {
        const auto r = x_value(f);
        REQUIRE(r.decided);
        CHECK(r.stable);
        if (r.x >= 2) {
            REQUIRE(r.avoiding_spec);
            CHECK(r.avoiding_spec->factors.size() == r.x - 1);
            CHECK_FALSE(contains(realize(*r.avoiding_spec), f));
        }
        for (const auto & s : all_products(r.x, r.block_used))
            CHECK(contains(realize(s), f));
    }
}

TEST_CASE("table constructions")
{
    CHECK(table1_construction({0, 2, 2, 0, 2}, 4).factors == std::vector<Factor>{Factor::I, Factor::T});
    CHECK(table1_construction({1, 1, 0, 0, 2}, 4).factors == std::vector<Factor>{Factor::I, Factor::I});
    CHECK(table1_construction({1, 0, 0, 0, 2}, 4).factors == std::vector<Factor>{Factor::I});
    CHECK(table1_construction({1, 1, 0, 0, 1}, 4).factors == std::vector<Factor>{Factor::I});
    CHECK(table1_construction({0, 2, 2, 0, 1}, 4).factors == std::vector<Factor>{Factor::I, Factor::T});
    CHECK_THROWS_AS(table1_construction({0, 1, 2, 0, 2}, 4), Error);
    CHECK_THROWS_AS(table1_construction({0, 0, 0, 1, 2}, 4), Error);
    CHECK(table1_construction({1, 0, 0, 0, 1}, 4).factors == std::vector<Factor>{Factor::I});
    CHECK_THROWS_AS(table1_construction({0, 1, 0, 0, 1}, 4), Error);
    CHECK_THROWS_AS(table1_construction({0, 0, 0, 0, 2}, 4), Error);
}

TEST_CASE("table constructions avoid their configuration")
{
    int checked = 0;
    for (std::size_t t = 2; t <= 3; ++t)
        for (std::size_t a = 0; a <= 3; ++a)
            for (std::size_t b = 0; a + b <= 3; ++b)
                for (std::size_t c = 0; c <= b; ++c)
                    for (std::size_t d = 0; d <= a; ++d) {
                        const FSpec fs{a, b, c, d, t};
                        if (fs.rows() == 0)
                            continue;
                        for (std::size_t block = 3; block <= 5; ++block) {
                            const auto spec = table1_construction(fs, block);
                            CHECK_MESSAGE(!contains(realize(spec), build_F(fs)),
                                spec.to_string() << " vs " << t << "F(" << a << b << c << d << ")");
                            ++checked;
                        }
                    }
    CHECK(checked > 50);
}

TEST_CASE("the identity avoids the doubled two-rowed family")
{
    const std::vector<BinMatrix> family{
        replicate(2, build_standard(StandardKind::Identity, 2)),
        replicate(2, build_standard(StandardKind::IdentityComplement, 2)),
        replicate(2, build_standard(StandardKind::Triangular, 2)),
    };
    for (std::size_t m = 2; m <= 12; ++m)
        CHECK(avoids(build_standard(StandardKind::Identity, m), ConfigProblem{family, 1}));
}
