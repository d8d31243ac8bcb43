#include "compactor/bigint.hpp"

#include <algorithm>

#include "compactor/errors.hpp"

namespace compactor {

BigUInt::BigUInt(uint64_t v) {
    while (v > 0) {
        limbs_.push_back(static_cast<uint32_t>(v % kBase));
        v /= kBase;
    }
}

void BigUInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUInt BigUInt::from_decimal(const std::string& s) {
    if (s.empty()) throw parse_error("empty integer literal");
    for (char c : s)
        if (c < '0' || c > '9') throw parse_error("bad digit in integer literal: " + s);
    BigUInt r;
    // consume 9 digits at a time, most significant chunk first
    size_t head = s.size() % 9;
    size_t pos = 0;
    auto push_chunk = [&r](uint32_t chunk) {
        // r = r * 1e9 + chunk
        uint64_t carry = chunk;
        for (auto& limb : r.limbs_) {
            uint64_t cur = static_cast<uint64_t>(limb) * kBase + carry;
            limb = static_cast<uint32_t>(cur % kBase);
            carry = cur / kBase;
        }
        while (carry > 0) {
            r.limbs_.push_back(static_cast<uint32_t>(carry % kBase));
            carry /= kBase;
        }
    };
    if (head > 0) {
        push_chunk(static_cast<uint32_t>(std::stoul(s.substr(0, head))));
        pos = head;
    }
    for (; pos < s.size(); pos += 9)
        push_chunk(static_cast<uint32_t>(std::stoul(s.substr(pos, 9))));
    r.trim();
    return r;
}

std::string BigUInt::to_decimal() const {
    if (limbs_.empty()) return "0";
    std::string out = std::to_string(limbs_.back());
    for (size_t i = limbs_.size() - 1; i-- > 0;) {
        std::string part = std::to_string(limbs_[i]);
        out += std::string(9 - part.size(), '0') + part;
    }
    return out;
}

BigUInt& BigUInt::operator+=(const BigUInt& o) {
    if (o.limbs_.size() > limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
    uint32_t carry = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        uint64_t cur = static_cast<uint64_t>(limbs_[i]) + carry +
                       (i < o.limbs_.size() ? o.limbs_[i] : 0);
        limbs_[i] = static_cast<uint32_t>(cur % kBase);
        carry = static_cast<uint32_t>(cur / kBase);
    }
    if (carry) limbs_.push_back(carry);
    return *this;
}

BigUInt operator*(const BigUInt& a, const BigUInt& b) {
    BigUInt r;
    if (a.is_zero() || b.is_zero()) return r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.limbs_.size(); ++j) {
            uint64_t cur = static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                           r.limbs_[i + j] + carry;
            r.limbs_[i + j] = static_cast<uint32_t>(cur % BigUInt::kBase);
            carry = cur / BigUInt::kBase;
        }
        size_t pos = i + b.limbs_.size();
        while (carry > 0) {
            uint64_t cur = r.limbs_[pos] + carry;
            r.limbs_[pos] = static_cast<uint32_t>(cur % BigUInt::kBase);
            carry = cur / BigUInt::kBase;
            ++pos;
        }
    }
    r.trim();
    return r;
}

bool operator<(const BigUInt& a, const BigUInt& b) {
    if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size();
    return std::lexicographical_compare(a.limbs_.rbegin(), a.limbs_.rend(),
                                        b.limbs_.rbegin(), b.limbs_.rend());
}

std::vector<BigUInt> poly_mul_truncated(const std::vector<BigUInt>& a,
                                        const std::vector<BigUInt>& b,
                                        size_t cap) {
    std::vector<BigUInt> r(std::min(cap + 1, a.empty() || b.empty() ? size_t{0} : a.size() + b.size() - 1));
    for (size_t i = 0; i < a.size() && i <= cap; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size() && i + j <= cap; ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

}  // namespace compactor
