#include "setaut/bigint.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>

namespace setaut {

BigUint::BigUint(std::uint64_t v) {
  limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
  if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
}

void BigUint::trim() {
  while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
}

BigUint& BigUint::operator*=(std::uint32_t v) {
  std::uint64_t carry = 0;
  for (auto& limb : limbs_) {
    std::uint64_t cur = static_cast<std::uint64_t>(limb) * v + carry;
    limb = static_cast<std::uint32_t>(cur & 0xffffffffu);
    carry = cur >> 32;
  }
  if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  trim();
  return *this;
}

BigUint& BigUint::operator*=(const BigUint& other) {
  *this = *this * other;
  return *this;
}

BigUint BigUint::operator*(const BigUint& other) const {
  if (is_zero() || other.is_zero()) return BigUint();
  BigUint out;
  out.limbs_.assign(limbs_.size() + other.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < other.limbs_.size(); ++j) {
      std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) * other.limbs_[j] +
                          out.limbs_[i + j] + carry;
      out.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    out.limbs_[i + other.limbs_.size()] += static_cast<std::uint32_t>(carry);
  }
  out.trim();
  return out;
}

BigUint& BigUint::operator+=(const BigUint& other) {
  if (other.limbs_.size() > limbs_.size()) limbs_.resize(other.limbs_.size(), 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t cur = carry + limbs_[i] +
                        (i < other.limbs_.size() ? other.limbs_[i] : 0);
    limbs_[i] = static_cast<std::uint32_t>(cur & 0xffffffffu);
    carry = cur >> 32;
  }
  if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  return *this;
}

int BigUint::compare(const BigUint& other) const {
  if (limbs_.size() != other.limbs_.size())
    return limbs_.size() < other.limbs_.size() ? -1 : 1;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    if (limbs_[i] != other.limbs_[i]) return limbs_[i] < other.limbs_[i] ? -1 : 1;
  }
  return 0;
}

std::uint64_t BigUint::bit_length() const {
  if (is_zero()) return 0;
  std::uint32_t top = limbs_.back();
  std::uint64_t bits = (limbs_.size() - 1) * 32ull;
  while (top) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

BigUint BigUint::factorial(std::uint64_t n) {
  BigUint out(1);
  for (std::uint64_t i = 2; i <= n; ++i) {
    // factorials here stay desk-sized; 32-bit steps are fine
    std::uint64_t f = i;
    while (f > 0xffffffffull) {
      out *= 0xffffffffu;
      f /= 0xffffffffull;
    }
    out *= static_cast<std::uint32_t>(f);
  }
  return out;
}

BigUint BigUint::pow2(std::uint64_t e) {
  BigUint out;
  out.limbs_.assign(e / 32 + 1, 0);
  out.limbs_.back() = 1u << (e % 32);
  return out;
}

std::string BigUint::to_string() const {
  if (is_zero()) return "0";
  std::vector<std::uint32_t> work = limbs_;
  std::string digits;
  while (!(work.size() == 1 && work[0] == 0)) {
    std::uint64_t rem = 0;
    for (std::size_t i = work.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | work[i];
      work[i] = static_cast<std::uint32_t>(cur / 1000000000u);
      rem = cur % 1000000000u;
    }
    while (work.size() > 1 && work.back() == 0) work.pop_back();
    bool last = work.size() == 1 && work[0] == 0;
    std::string chunk = std::to_string(rem);
    if (!last) chunk = std::string(9 - chunk.size(), '0') + chunk;
    digits = chunk + digits;
  }
  return digits;
}

BigUint BigUint::from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("BigUint::from_string: empty");
  BigUint out;
  for (char c : s) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("BigUint::from_string: non-digit");
    out *= 10u;
    out += BigUint(static_cast<std::uint64_t>(c - '0'));
  }
  return out;
}

bool BigUint::fits_u64() const { return bit_length() <= 64; }

std::uint64_t BigUint::to_u64() const {
  std::uint64_t v = limbs_[0];
  if (limbs_.size() > 1) v |= static_cast<std::uint64_t>(limbs_[1]) << 32;
  return v;
}

}  // namespace setaut
