#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace compactor {

// Arbitrary-precision non-negative integer, base 10^9 limbs.
// Counts in this project are exact; nothing here ever overflows or saturates.
class BigUInt {
public:
    BigUInt() = default;
    BigUInt(uint64_t v);  // NOLINT: implicit on purpose, counts start as small literals

    static BigUInt from_decimal(const std::string& s);
    std::string to_decimal() const;

    bool is_zero() const { return limbs_.empty(); }

    BigUInt& operator+=(const BigUInt& o);
    friend BigUInt operator+(BigUInt a, const BigUInt& b) { a += b; return a; }
    friend BigUInt operator*(const BigUInt& a, const BigUInt& b);

    friend bool operator==(const BigUInt& a, const BigUInt& b) { return a.limbs_ == b.limbs_; }
    friend bool operator!=(const BigUInt& a, const BigUInt& b) { return !(a == b); }
    friend bool operator<(const BigUInt& a, const BigUInt& b);
    friend bool operator<=(const BigUInt& a, const BigUInt& b) { return !(b < a); }
    friend bool operator>(const BigUInt& a, const BigUInt& b) { return b < a; }
    friend bool operator>=(const BigUInt& a, const BigUInt& b) { return !(a < b); }

private:
    static constexpr uint32_t kBase = 1000000000u;
    std::vector<uint32_t> limbs_;  // little-endian, normalized (no trailing zero limbs)
    void trim();
};

// Coefficient-wise product of two count polynomials, truncated to degree `cap`.
std::vector<BigUInt> poly_mul_truncated(const std::vector<BigUInt>& a,
                                        const std::vector<BigUInt>& b,
                                        size_t cap);

}  // namespace compactor
