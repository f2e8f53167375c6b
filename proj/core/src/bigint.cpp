#include "secacc/bigint.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace secacc::crypto {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Divide `limbs` in place by a single limb, returning the remainder.
std::uint32_t div_small(std::vector<std::uint32_t>& limbs, std::uint32_t divisor) {
  std::uint64_t rem = 0;
  for (std::size_t i = limbs.size(); i-- > 0;) {
    std::uint64_t cur = (rem << 32) | limbs[i];
    limbs[i] = static_cast<std::uint32_t>(cur / divisor);
    rem = cur % divisor;
  }
  while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
  return static_cast<std::uint32_t>(rem);
}

}  // namespace

BigUint::BigUint(std::uint64_t value) {
  if (value != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(value));
    if ((value >> 32) != 0) limbs_.push_back(static_cast<std::uint32_t>(value >> 32));
  }
}

void BigUint::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint BigUint::from_bytes_be(std::span<const std::uint8_t> bytes) {
  BigUint r;
  r.limbs_.assign((bytes.size() + 3) / 4, 0);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    std::size_t bit_pos = (bytes.size() - 1 - i) * 8;
    r.limbs_[bit_pos / 32] |= static_cast<std::uint32_t>(bytes[i]) << (bit_pos % 32);
  }
  r.trim();
  return r;
}

BigUint BigUint::from_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  BigUint r;
  r.limbs_.assign((hex.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < hex.size(); ++i) {
    int v = hex_value(hex[hex.size() - 1 - i]);
    if (v < 0) throw std::invalid_argument("BigUint::from_hex: bad digit");
    r.limbs_[i / 8] |= static_cast<std::uint32_t>(v) << (4 * (i % 8));
  }
  r.trim();
  return r;
}

BigUint BigUint::from_dec(std::string_view dec) {
  BigUint r;
  for (char c : dec) {
    if (c < '0' || c > '9') throw std::invalid_argument("BigUint::from_dec: bad digit");
    r = r * BigUint(10) + BigUint(static_cast<std::uint64_t>(c - '0'));
  }
  return r;
}

std::vector<std::uint8_t> BigUint::to_bytes_be(std::size_t width) const {
  std::size_t n = (bit_length() + 7) / 8;
  std::size_t out_len = std::max(n, width);
  std::vector<std::uint8_t> out(out_len, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t limb = limbs_[i / 4];
    out[out_len - 1 - i] = static_cast<std::uint8_t>(limb >> (8 * (i % 4)));
  }
  return out;
}

std::string BigUint::to_hex() const {
  if (limbs_.empty()) return "0";
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  for (std::size_t i = limbs_.size(); i-- > 0;)
    for (int shift = 28; shift >= 0; shift -= 4) s.push_back(kDigits[(limbs_[i] >> shift) & 0xf]);
  auto first = s.find_first_not_of('0');
  return s.substr(first);
}

std::string BigUint::to_dec() const {
  if (limbs_.empty()) return "0";
  std::vector<std::uint32_t> work = limbs_;
  std::string s;
  while (!work.empty()) {
    std::uint32_t chunk = div_small(work, 1'000'000'000u);
    for (int i = 0; i < 9; ++i) {
      s.push_back(static_cast<char>('0' + chunk % 10));
      chunk /= 10;
      if (work.empty() && chunk == 0) break;
    }
  }
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  std::reverse(s.begin(), s.end());
  return s;
}

std::size_t BigUint::bit_length() const {
  if (limbs_.empty()) return 0;
  return 32 * (limbs_.size() - 1) + (32 - static_cast<std::size_t>(std::countl_zero(limbs_.back())));
}

bool BigUint::bit(std::size_t index) const {
  std::size_t limb = index / 32;
  if (limb >= limbs_.size()) return false;
  return ((limbs_[limb] >> (index % 32)) & 1u) != 0;
}

BigUint operator+(const BigUint& a, const BigUint& b) {
  BigUint r;
  const auto& x = a.limbs_.size() >= b.limbs_.size() ? a.limbs_ : b.limbs_;
  const auto& y = a.limbs_.size() >= b.limbs_.size() ? b.limbs_ : a.limbs_;
  r.limbs_.resize(x.size() + 1);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::uint64_t sum = carry + x[i] + (i < y.size() ? y[i] : 0u);
    r.limbs_[i] = static_cast<std::uint32_t>(sum);
    carry = sum >> 32;
  }
  r.limbs_[x.size()] = static_cast<std::uint32_t>(carry);
  r.trim();
  return r;
}

BigUint operator-(const BigUint& a, const BigUint& b) {
  if (a < b) throw std::domain_error("BigUint: negative result");
  BigUint r;
  r.limbs_.resize(a.limbs_.size());
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    std::int64_t diff = static_cast<std::int64_t>(a.limbs_[i]) - borrow -
                        (i < b.limbs_.size() ? static_cast<std::int64_t>(b.limbs_[i]) : 0);
    borrow = diff < 0 ? 1 : 0;
    r.limbs_[i] = static_cast<std::uint32_t>(diff + (borrow << 32));
  }
  r.trim();
  return r;
}

BigUint operator*(const BigUint& a, const BigUint& b) {
  if (a.is_zero() || b.is_zero()) return {};
  BigUint r;
  r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
      std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                          r.limbs_[i + j] + carry;
      r.limbs_[i + j] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    r.limbs_[i + b.limbs_.size()] = static_cast<std::uint32_t>(carry);
  }
  r.trim();
  return r;
}

BigUint BigUint::operator<<(std::size_t bits) const {
  if (is_zero()) return {};
  BigUint r;
  std::size_t limb_shift = bits / 32;
  unsigned bit_shift = bits % 32;
  r.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t v = static_cast<std::uint64_t>(limbs_[i]) << bit_shift;
    r.limbs_[i + limb_shift] |= static_cast<std::uint32_t>(v);
    r.limbs_[i + limb_shift + 1] |= static_cast<std::uint32_t>(v >> 32);
  }
  r.trim();
  return r;
}

BigUint BigUint::operator>>(std::size_t bits) const {
  std::size_t limb_shift = bits / 32;
  if (limb_shift >= limbs_.size()) return {};
  unsigned bit_shift = bits % 32;
  BigUint r;
  r.limbs_.assign(limbs_.size() - limb_shift, 0);
  for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
    std::uint64_t v = limbs_[i + limb_shift];
    if (i + limb_shift + 1 < limbs_.size())
      v |= static_cast<std::uint64_t>(limbs_[i + limb_shift + 1]) << 32;
    r.limbs_[i] = static_cast<std::uint32_t>(v >> bit_shift);
  }
  r.trim();
  return r;
}

std::strong_ordering operator<=>(const BigUint& a, const BigUint& b) {
  if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() <=> b.limbs_.size();
  for (std::size_t i = a.limbs_.size(); i-- > 0;)
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
  return std::strong_ordering::equal;
}

// Knuth, TAOCP vol. 2, 4.3.1 Algorithm D.
void BigUint::divmod(const BigUint& a, const BigUint& b, BigUint& quotient, BigUint& remainder) {
  if (b.is_zero()) throw std::domain_error("BigUint: division by zero");
  if (a < b) {
    quotient = {};
    remainder = a;
    return;
  }
  if (b.limbs_.size() == 1) {
    quotient = a;
    std::uint32_t rem = div_small(quotient.limbs_, b.limbs_[0]);
    remainder = BigUint(rem);
    return;
  }

  const unsigned shift = static_cast<unsigned>(std::countl_zero(b.limbs_.back()));
  const std::vector<std::uint32_t> v = (b << shift).limbs_;
  std::vector<std::uint32_t> u = (a << shift).limbs_;
  if (u.size() == a.limbs_.size()) u.push_back(0);
  if (u.size() < a.limbs_.size() + 1) u.resize(a.limbs_.size() + 1, 0);

  const std::size_t n = v.size();
  const std::size_t m = u.size() - n;
  std::vector<std::uint32_t> q(m, 0);
  constexpr std::uint64_t kBase = 1ull << 32;

  for (std::size_t j = m; j-- > 0;) {
    std::uint64_t num = (static_cast<std::uint64_t>(u[j + n]) << 32) | u[j + n - 1];
    std::uint64_t qhat = num / v[n - 1];
    std::uint64_t rhat = num % v[n - 1];
    while (qhat >= kBase || qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
      --qhat;
      rhat += v[n - 1];
      if (rhat >= kBase) break;
    }
    std::int64_t borrow = 0;
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t p = qhat * v[i] + carry;
      carry = p >> 32;
      std::int64_t t = static_cast<std::int64_t>(u[i + j]) - borrow -
                       static_cast<std::int64_t>(p & 0xffffffffu);
      u[i + j] = static_cast<std::uint32_t>(t);
      borrow = t < 0 ? 1 : 0;
    }
    std::int64_t t = static_cast<std::int64_t>(u[j + n]) - borrow - static_cast<std::int64_t>(carry);
    u[j + n] = static_cast<std::uint32_t>(t);
    if (t < 0) {
      --qhat;
      std::uint64_t c = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t s = static_cast<std::uint64_t>(u[i + j]) + v[i] + c;
        u[i + j] = static_cast<std::uint32_t>(s);
        c = s >> 32;
      }
      u[j + n] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(u[j + n]) + c);
    }
    q[j] = static_cast<std::uint32_t>(qhat);
  }

  quotient.limbs_ = std::move(q);
  quotient.trim();
  u.resize(n);
  BigUint r;
  r.limbs_ = std::move(u);
  r.trim();
  remainder = r >> shift;
}

BigUint operator/(const BigUint& a, const BigUint& b) {
  BigUint q, r;
  BigUint::divmod(a, b, q, r);
  return q;
}

BigUint operator%(const BigUint& a, const BigUint& b) {
  BigUint q, r;
  BigUint::divmod(a, b, q, r);
  return r;
}

}  // namespace secacc::crypto
