#include "secacc/crypto.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

#include "secacc/errors.hpp"

namespace secacc::crypto {

// ---------------------------------------------------------------------------
// SHA-256

namespace {

constexpr std::array<std::uint32_t, 64> kSha256K = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
    0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
    0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
    0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
    0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
    0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
    0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
    0xc67178f2};

constexpr std::array<std::uint32_t, 8> kSha256Init = {0x6a09e667, 0xbb67ae85, 0x3c6ef372,
                                                      0xa54ff53a, 0x510e527f, 0x9b05688c,
                                                      0x1f83d9ab, 0x5be0cd19};

std::uint32_t load_be32(const std::uint8_t* p) {
  return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
         (static_cast<std::uint32_t>(p[2]) << 8) | static_cast<std::uint32_t>(p[3]);
}

void store_be32(std::uint8_t* p, std::uint32_t v) {
  p[0] = static_cast<std::uint8_t>(v >> 24);
  p[1] = static_cast<std::uint8_t>(v >> 16);
  p[2] = static_cast<std::uint8_t>(v >> 8);
  p[3] = static_cast<std::uint8_t>(v);
}

}  // namespace

Sha256::Sha256() : state_(kSha256Init) {}

void Sha256::compress(const std::uint8_t* block) {
  std::array<std::uint32_t, 64> w{};
  for (int i = 0; i < 16; ++i) w[i] = load_be32(block + 4 * i);
  for (int i = 16; i < 64; ++i) {
    std::uint32_t s0 = std::rotr(w[i - 15], 7) ^ std::rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
    std::uint32_t s1 = std::rotr(w[i - 2], 17) ^ std::rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
    w[i] = w[i - 16] + s0 + w[i - 7] + s1;
  }
  auto [a, b, c, d, e, f, g, h] = state_;
  for (int i = 0; i < 64; ++i) {
    std::uint32_t s1 = std::rotr(e, 6) ^ std::rotr(e, 11) ^ std::rotr(e, 25);
    std::uint32_t ch = (e & f) ^ (~e & g);
    std::uint32_t t1 = h + s1 + ch + kSha256K[i] + w[i];
    std::uint32_t s0 = std::rotr(a, 2) ^ std::rotr(a, 13) ^ std::rotr(a, 22);
    std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
    std::uint32_t t2 = s0 + maj;
    h = g;
    g = f;
    f = e;
    e = d + t1;
    d = c;
    c = b;
    b = a;
    a = t1 + t2;
  }
  state_[0] += a;
  state_[1] += b;
  state_[2] += c;
  state_[3] += d;
  state_[4] += e;
  state_[5] += f;
  state_[6] += g;
  state_[7] += h;
  ++blocks_;
}

void Sha256::update(ByteView data) {
  length_ += data.size();
  std::size_t offset = 0;
  if (buffered_ > 0) {
    std::size_t take = std::min(kBlockSize - buffered_, data.size());
    std::memcpy(buffer_.data() + buffered_, data.data(), take);
    buffered_ += take;
    offset = take;
    if (buffered_ < kBlockSize) return;
    compress(buffer_.data());
    buffered_ = 0;
  }
  for (; offset + kBlockSize <= data.size(); offset += kBlockSize) compress(data.data() + offset);
  if (offset < data.size()) {
    buffered_ = data.size() - offset;
    std::memcpy(buffer_.data(), data.data() + offset, buffered_);
  }
}

Digest256 Sha256::finish() {
  const std::uint64_t bit_length = length_ * 8;
  buffer_[buffered_++] = 0x80;
  if (buffered_ > kBlockSize - 8) {
    std::fill(buffer_.begin() + static_cast<std::ptrdiff_t>(buffered_), buffer_.end(), 0);
    compress(buffer_.data());
    buffered_ = 0;
  }
  std::fill(buffer_.begin() + static_cast<std::ptrdiff_t>(buffered_), buffer_.end() - 8, 0);
  for (int i = 0; i < 8; ++i)
    buffer_[kBlockSize - 1 - i] = static_cast<std::uint8_t>(bit_length >> (8 * i));
  compress(buffer_.data());
  buffered_ = 0;

  Digest256 out{};
  for (int i = 0; i < 8; ++i) store_be32(out.data() + 4 * i, state_[i]);
  return out;
}

Digest256 sha256(ByteView message) {
  Sha256 h;
  h.update(message);
  return h.finish();
}

Digest256 hmac_sha256(ByteView key, ByteView message) {
  std::array<std::uint8_t, Sha256::kBlockSize> k0{};
  if (key.size() > Sha256::kBlockSize) {
    Digest256 hashed = sha256(key);
    std::copy(hashed.begin(), hashed.end(), k0.begin());
  } else {
    std::copy(key.begin(), key.end(), k0.begin());
  }
  std::array<std::uint8_t, Sha256::kBlockSize> ipad{}, opad{};
  for (std::size_t i = 0; i < k0.size(); ++i) {
    ipad[i] = k0[i] ^ 0x36;
    opad[i] = k0[i] ^ 0x5c;
  }
  Sha256 inner;
  inner.update(ipad);
  inner.update(message);
  Digest256 inner_digest = inner.finish();
  Sha256 outer;
  outer.update(opad);
  outer.update(inner_digest);
  return outer.finish();
}

// ---------------------------------------------------------------------------
// AES-256

namespace {

constexpr std::array<std::uint8_t, 256> kSbox = {
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab,
    0x76, 0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4,
    0x72, 0xc0, 0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71,
    0xd8, 0x31, 0x15, 0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2,
    0xeb, 0x27, 0xb2, 0x75, 0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6,
    0xb3, 0x29, 0xe3, 0x2f, 0x84, 0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb,
    0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf, 0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45,
    0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8, 0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5,
    0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2, 0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44,
    0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73, 0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a,
    0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb, 0xe0, 0x32, 0x3a, 0x0a, 0x49,
    0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79, 0xe7, 0xc8, 0x37, 0x6d,
    0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08, 0xba, 0x78, 0x25,
    0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a, 0x70, 0x3e,
    0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e, 0xe1,
    0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb,
    0x16};

constexpr std::array<std::uint8_t, 256> make_inv_sbox() {
  std::array<std::uint8_t, 256> inv{};
  for (std::size_t i = 0; i < 256; ++i) inv[kSbox[i]] = static_cast<std::uint8_t>(i);
  return inv;
}

constexpr std::array<std::uint8_t, 256> kInvSbox = make_inv_sbox();

constexpr std::uint8_t xtime(std::uint8_t x) {
  return static_cast<std::uint8_t>((x << 1) ^ ((x & 0x80) != 0 ? 0x1b : 0x00));
}

constexpr std::uint8_t gmul(std::uint8_t a, std::uint8_t b) {
  std::uint8_t p = 0;
  while (b != 0) {
    if ((b & 1) != 0) p ^= a;
    a = xtime(a);
    b >>= 1;
  }
  return p;
}

std::uint32_t sub_word(std::uint32_t w) {
  return (static_cast<std::uint32_t>(kSbox[w >> 24]) << 24) |
         (static_cast<std::uint32_t>(kSbox[(w >> 16) & 0xff]) << 16) |
         (static_cast<std::uint32_t>(kSbox[(w >> 8) & 0xff]) << 8) |
         static_cast<std::uint32_t>(kSbox[w & 0xff]);
}

using State = std::array<std::uint8_t, 16>;  // column-major, as in FIPS-197

void add_round_key(State& s, const std::uint32_t* rk) {
  for (int c = 0; c < 4; ++c) {
    s[4 * c + 0] ^= static_cast<std::uint8_t>(rk[c] >> 24);
    s[4 * c + 1] ^= static_cast<std::uint8_t>(rk[c] >> 16);
    s[4 * c + 2] ^= static_cast<std::uint8_t>(rk[c] >> 8);
    s[4 * c + 3] ^= static_cast<std::uint8_t>(rk[c]);
  }
}

void shift_rows(State& s, bool inverse) {
  State t = s;
  for (int r = 1; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      int src = inverse ? (c - r + 4) % 4 : (c + r) % 4;
      s[4 * c + r] = t[4 * src + r];
    }
}

void mix_columns(State& s, bool inverse) {
  for (int c = 0; c < 4; ++c) {
    std::uint8_t* col = s.data() + 4 * c;
    std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
    if (!inverse) {
      col[0] = static_cast<std::uint8_t>(gmul(a0, 2) ^ gmul(a1, 3) ^ a2 ^ a3);
      col[1] = static_cast<std::uint8_t>(a0 ^ gmul(a1, 2) ^ gmul(a2, 3) ^ a3);
      col[2] = static_cast<std::uint8_t>(a0 ^ a1 ^ gmul(a2, 2) ^ gmul(a3, 3));
      col[3] = static_cast<std::uint8_t>(gmul(a0, 3) ^ a1 ^ a2 ^ gmul(a3, 2));
    } else {
      col[0] = static_cast<std::uint8_t>(gmul(a0, 14) ^ gmul(a1, 11) ^ gmul(a2, 13) ^ gmul(a3, 9));
      col[1] = static_cast<std::uint8_t>(gmul(a0, 9) ^ gmul(a1, 14) ^ gmul(a2, 11) ^ gmul(a3, 13));
      col[2] = static_cast<std::uint8_t>(gmul(a0, 13) ^ gmul(a1, 9) ^ gmul(a2, 14) ^ gmul(a3, 11));
      col[3] = static_cast<std::uint8_t>(gmul(a0, 11) ^ gmul(a1, 13) ^ gmul(a2, 9) ^ gmul(a3, 14));
    }
  }
}

constexpr int kRounds = 14;

}  // namespace

Aes256::Aes256(std::span<const std::uint8_t, 32> key) {
  constexpr int nk = 8;
  for (int i = 0; i < nk; ++i) round_keys_[i] = load_be32(key.data() + 4 * i);
  std::uint32_t rcon = 0x01;
  for (int i = nk; i < 4 * (kRounds + 1); ++i) {
    std::uint32_t temp = round_keys_[i - 1];
    if (i % nk == 0) {
      temp = sub_word(std::rotl(temp, 8)) ^ (rcon << 24);
      rcon = xtime(static_cast<std::uint8_t>(rcon));
    } else if (i % nk == 4) {
      temp = sub_word(temp);
    }
    round_keys_[i] = round_keys_[i - nk] ^ temp;
  }
}

void Aes256::encrypt_block(const std::uint8_t* in, std::uint8_t* out) const {
  State s;
  std::copy(in, in + 16, s.begin());
  add_round_key(s, round_keys_.data());
  for (int round = 1; round <= kRounds; ++round) {
    for (auto& b : s) b = kSbox[b];
    shift_rows(s, false);
    if (round != kRounds) mix_columns(s, false);
    add_round_key(s, round_keys_.data() + 4 * round);
  }
  std::copy(s.begin(), s.end(), out);
}

void Aes256::decrypt_block(const std::uint8_t* in, std::uint8_t* out) const {
  State s;
  std::copy(in, in + 16, s.begin());
  add_round_key(s, round_keys_.data() + 4 * kRounds);
  for (int round = kRounds - 1; round >= 0; --round) {
    shift_rows(s, true);
    for (auto& b : s) b = kInvSbox[b];
    add_round_key(s, round_keys_.data() + 4 * round);
    if (round != 0) mix_columns(s, true);
  }
  std::copy(s.begin(), s.end(), out);
}

Bytes aes256_cbc_encrypt(const AesKeyIv& k, ByteView plaintext) {
  if (plaintext.size() % Aes256::kBlockSize != 0)
    throw ValidationError("aes256_cbc_encrypt: input length " + std::to_string(plaintext.size()) +
                          " is not a multiple of 16");
  Aes256 cipher(k.key);
  Bytes out(plaintext.size());
  std::array<std::uint8_t, 16> chain = k.iv;
  for (std::size_t off = 0; off < plaintext.size(); off += 16) {
    std::array<std::uint8_t, 16> block{};
    for (int i = 0; i < 16; ++i) block[i] = plaintext[off + i] ^ chain[i];
    cipher.encrypt_block(block.data(), out.data() + off);
    std::copy_n(out.begin() + static_cast<std::ptrdiff_t>(off), 16, chain.begin());
  }
  return out;
}

Bytes aes256_cbc_decrypt(const AesKeyIv& k, ByteView ciphertext) {
  if (ciphertext.size() % Aes256::kBlockSize != 0)
    throw ValidationError("aes256_cbc_decrypt: input length " + std::to_string(ciphertext.size()) +
                          " is not a multiple of 16");
  Aes256 cipher(k.key);
  Bytes out(ciphertext.size());
  std::array<std::uint8_t, 16> chain = k.iv;
  for (std::size_t off = 0; off < ciphertext.size(); off += 16) {
    cipher.decrypt_block(ciphertext.data() + off, out.data() + off);
    for (int i = 0; i < 16; ++i) out[off + i] ^= chain[i];
    std::copy_n(ciphertext.begin() + static_cast<std::ptrdiff_t>(off), 16, chain.begin());
  }
  return out;
}

// ---------------------------------------------------------------------------
// RSA

void validate(const RsaParams& p) {
  if (p.key_bits != 512 && p.key_bits != 1024)
    throw ValidationError("rsa: key_bits must be 512 or 1024 (got " + std::to_string(p.key_bits) +
                          ")");
  if (!p.modulus.is_odd()) throw ValidationError("rsa: modulus must be odd");
  if (p.modulus.bit_length() != p.key_bits)
    throw ValidationError("rsa: modulus is " + std::to_string(p.modulus.bit_length()) +
                          " bits, expected " + std::to_string(p.key_bits));
  if (p.exponent.is_zero() || !(p.exponent < p.modulus))
    throw ValidationError("rsa: exponent must satisfy 0 < e < modulus");
}

BigUint rsa_modexp(const BigUint& base, const BigUint& exponent, const BigUint& modulus) {
  if (modulus <= BigUint(1)) throw ValidationError("rsa_modexp: modulus must be > 1");
  BigUint result(1);
  BigUint b = base % modulus;
  // Left-to-right binary exponentiation.
  for (std::size_t i = exponent.bit_length(); i-- > 0;) {
    result = (result * result) % modulus;
    if (exponent.bit(i)) result = (result * b) % modulus;
  }
  return result % modulus;
}

// ---------------------------------------------------------------------------

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xf]);
  }
  return s;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ValidationError("hex string has odd length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw ValidationError(std::string("bad hex digit '") + c + "'");
  };
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
  return out;
}

}  // namespace secacc::crypto
