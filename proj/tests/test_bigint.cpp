#include "doctest.h"

#include "compactor/bigint.hpp"
#include "compactor/errors.hpp"

using namespace compactor;

TEST_CASE("decimal round trip") {
    CHECK(BigUInt().to_decimal() == "0");
    CHECK(BigUInt(0).to_decimal() == "0");
    CHECK(BigUInt(1).to_decimal() == "1");
    CHECK(BigUInt(999999999).to_decimal() == "999999999");
    CHECK(BigUInt(1000000000).to_decimal() == "1000000000");
    CHECK(BigUInt(18446744073709551615ull).to_decimal() == "18446744073709551615");
    for (const char* s : {"0", "7", "1000000000000000000000000000001", "123456789012345678901234567890"})
        CHECK(BigUInt::from_decimal(s).to_decimal() == s);
    CHECK_THROWS_AS(BigUInt::from_decimal(""), parse_error);
    CHECK_THROWS_AS(BigUInt::from_decimal("12x4"), parse_error);
}

TEST_CASE("addition carries across limbs") {
    BigUInt a = BigUInt::from_decimal("999999999999999999");
    a += BigUInt(1);
    CHECK(a.to_decimal() == "1000000000000000000");
    BigUInt sum;
    for (int i = 0; i < 1000; ++i) sum += BigUInt(999999999);
    CHECK(sum.to_decimal() == "999999999000");
}

TEST_CASE("multiplication matches factorial growth") {
    // 25! by repeated multiplication, against the known value
    BigUInt f(1);
    for (uint64_t i = 2; i <= 25; ++i) f = f * BigUInt(i);
    CHECK(f.to_decimal() == "15511210043330985984000000");
    CHECK((BigUInt(0) * f).is_zero());
    CHECK((f * BigUInt(1)) == f);
}

TEST_CASE("ordering") {
    CHECK(BigUInt(5) < BigUInt(7));
    CHECK(BigUInt(1000000000) > BigUInt(999999999));
    CHECK(BigUInt::from_decimal("10000000000000000000") > BigUInt::from_decimal("9999999999999999999"));
    CHECK(BigUInt(42) == BigUInt::from_decimal("42"));
}

TEST_CASE("truncated polynomial product") {
    std::vector<BigUInt> a{1, 2, 3};  // 1 + 2z + 3z^2
    std::vector<BigUInt> b{4, 5};     // 4 + 5z
    auto full = poly_mul_truncated(a, b, 10);
    REQUIRE(full.size() == 4);
    CHECK(full[0] == BigUInt(4));
    CHECK(full[1] == BigUInt(13));
    CHECK(full[2] == BigUInt(22));
    CHECK(full[3] == BigUInt(15));
    auto cut = poly_mul_truncated(a, b, 1);
    REQUIRE(cut.size() == 2);
    CHECK(cut[0] == BigUInt(4));
    CHECK(cut[1] == BigUInt(13));
    CHECK(poly_mul_truncated({}, b, 3).empty());
}
