#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "secacc/bigint.hpp"

namespace secacc::crypto {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;
using Digest256 = std::array<std::uint8_t, 32>;

/// Incremental SHA-256 (FIPS 180-4).
class Sha256 {
 public:
  static constexpr std::size_t kBlockSize = 64;

  Sha256();
  void update(ByteView data);
  Digest256 finish();

  /// Compression-function invocations so far (including those run by finish()).
  std::uint64_t blocks_compressed() const { return blocks_; }

 private:
  void compress(const std::uint8_t* block);

  std::array<std::uint32_t, 8> state_;
  std::array<std::uint8_t, kBlockSize> buffer_{};
  std::size_t buffered_ = 0;
  std::uint64_t length_ = 0;
  std::uint64_t blocks_ = 0;
};

Digest256 sha256(ByteView message);

/// Compression blocks consumed by a message of `length` bytes: ceil((n + 9) / 64).
constexpr std::uint64_t sha256_block_count(std::uint64_t length) { return (length + 9 + 63) / 64; }

Digest256 hmac_sha256(ByteView key, ByteView message);

struct AesKeyIv {
  std::array<std::uint8_t, 32> key{};
  std::array<std::uint8_t, 16> iv{};
};

/// AES-256 block primitive with the expanded key schedule.
class Aes256 {
 public:
  static constexpr std::size_t kBlockSize = 16;

  explicit Aes256(std::span<const std::uint8_t, 32> key);
  void encrypt_block(const std::uint8_t* in, std::uint8_t* out) const;
  void decrypt_block(const std::uint8_t* in, std::uint8_t* out) const;

 private:
  std::array<std::uint32_t, 60> round_keys_{};
};

/// Throws ValidationError unless the input is a multiple of 16 bytes.
Bytes aes256_cbc_encrypt(const AesKeyIv& k, ByteView plaintext);
Bytes aes256_cbc_decrypt(const AesKeyIv& k, ByteView ciphertext);

struct RsaParams {
  BigUint modulus;
  BigUint exponent;
  unsigned key_bits = 0;
};

/// Throws ValidationError when the invariants (odd modulus of exactly
/// key_bits bits, 0 < exponent < modulus, key_bits in {512, 1024}) fail.
void validate(const RsaParams& params);

/// base^exponent mod modulus. Throws ValidationError for modulus <= 1.
BigUint rsa_modexp(const BigUint& base, const BigUint& exponent, const BigUint& modulus);

std::string to_hex(ByteView bytes);
Bytes from_hex(std::string_view hex);

}  // namespace secacc::crypto
