#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace setaut {

// Unsigned arbitrary-precision integer, just large enough for exact group
// orders (products of factorials). Little-endian 32-bit limbs, no division
// beyond the small-divisor case needed for decimal printing.
class BigUint {
public:
  BigUint() : limbs_{0} {}
  explicit BigUint(std::uint64_t v);

  static BigUint one() { return BigUint(1); }
  static BigUint factorial(std::uint64_t n);
  static BigUint pow2(std::uint64_t e);

  bool is_zero() const { return limbs_.size() == 1 && limbs_[0] == 0; }

  BigUint& operator*=(std::uint32_t v);
  BigUint& operator*=(const BigUint& other);
  BigUint operator*(const BigUint& other) const;
  BigUint& operator+=(const BigUint& other);

  // -1, 0, +1 as this <=> other.
  int compare(const BigUint& other) const;
  bool operator==(const BigUint& other) const { return compare(other) == 0; }
  bool operator!=(const BigUint& other) const { return compare(other) != 0; }
  bool operator<(const BigUint& other) const { return compare(other) < 0; }
  bool operator<=(const BigUint& other) const { return compare(other) <= 0; }
  bool operator>(const BigUint& other) const { return compare(other) > 0; }
  bool operator>=(const BigUint& other) const { return compare(other) >= 0; }

  // floor(log2(x)) + 1; 0 for x = 0.
  std::uint64_t bit_length() const;

  std::string to_string() const;
  static BigUint from_string(const std::string& s);

  bool fits_u64() const;
  std::uint64_t to_u64() const;  // precondition: fits_u64()

private:
  void trim();
  std::vector<std::uint32_t> limbs_;
};

}  // namespace setaut
