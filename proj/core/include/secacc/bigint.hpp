#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace secacc::crypto {

/// Unsigned arbitrary-precision integer, little-endian 32-bit limbs.
/// Sized for functional RSA checks (a few thousand bits), not for speed.
class BigUint {
 public:
  BigUint() = default;
  BigUint(std::uint64_t value);  // NOLINT(google-explicit-constructor)

  static BigUint from_bytes_be(std::span<const std::uint8_t> bytes);
  static BigUint from_hex(std::string_view hex);
  static BigUint from_dec(std::string_view dec);

  /// Big-endian bytes, left-padded with zeros to `width` (0 = minimal).
  std::vector<std::uint8_t> to_bytes_be(std::size_t width = 0) const;
  std::string to_hex() const;
  std::string to_dec() const;

  bool is_zero() const { return limbs_.empty(); }
  bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1u) != 0; }
  std::size_t bit_length() const;
  bool bit(std::size_t index) const;

  friend BigUint operator+(const BigUint& a, const BigUint& b);
  /// Requires a >= b.
  friend BigUint operator-(const BigUint& a, const BigUint& b);
  friend BigUint operator*(const BigUint& a, const BigUint& b);
  friend BigUint operator/(const BigUint& a, const BigUint& b);
  friend BigUint operator%(const BigUint& a, const BigUint& b);
  BigUint operator<<(std::size_t bits) const;
  BigUint operator>>(std::size_t bits) const;

  friend std::strong_ordering operator<=>(const BigUint& a, const BigUint& b);
  friend bool operator==(const BigUint& a, const BigUint& b) = default;

  /// Quotient and remainder in one pass. Throws std::domain_error on zero divisor.
  static void divmod(const BigUint& a, const BigUint& b, BigUint& quotient, BigUint& remainder);

  const std::vector<std::uint32_t>& limbs() const { return limbs_; }

 private:
  void trim();
  std::vector<std::uint32_t> limbs_;
};

}  // namespace secacc::crypto
