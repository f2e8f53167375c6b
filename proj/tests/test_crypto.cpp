#include <gtest/gtest.h>

#include <boost/integer/mod_inverse.hpp>
#include <boost/multiprecision/miller_rabin.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "secacc/bigint.hpp"
#include "secacc/crypto.hpp"
#include "secacc/errors.hpp"
#include "support.hpp"

namespace secacc {
namespace {

using crypto::BigUint;
using crypto::Bytes;
using testing::cpp_int;

Bytes to_bytes(const crypto::Digest256& d) { return Bytes(d.begin(), d.end()); }

crypto::AesKeyIv split_key_iv(const Bytes& key_iv) {
  crypto::AesKeyIv k;
  std::copy_n(key_iv.begin(), 32, k.key.begin());
  std::copy_n(key_iv.begin() + 32, 16, k.iv.begin());
  return k;
}

TEST(Sha256, KnownAnswers) {
  const auto kat = testing::load_kat("sha256.kat");
  ASSERT_GE(kat.size(), 4u);
  for (const auto& v : kat) EXPECT_EQ(to_bytes(crypto::sha256(v.input)), v.expected) << "line " << v.line;
}

TEST(Sha256, IncrementalMatchesOneShot) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto msg = testing::random_bytes(rng, rng() % 300);
    crypto::Sha256 h;
    std::size_t pos = 0;
    while (pos < msg.size()) {
      const std::size_t n = std::min<std::size_t>(rng() % 70 + 1, msg.size() - pos);
      h.update(crypto::ByteView(msg.data() + pos, n));
      pos += n;
    }
    EXPECT_EQ(to_bytes(h.finish()), to_bytes(crypto::sha256(msg)));
  }
}

TEST(Sha256, BlockCountFormula) {
  for (std::uint64_t n : {0u, 1u, 55u, 56u, 63u, 64u, 119u, 120u, 4096u}) {
    crypto::Sha256 h;
    Bytes msg(n, 0x61);
    h.update(msg);
    h.finish();
    EXPECT_EQ(h.blocks_compressed(), crypto::sha256_block_count(n)) << n;
  }
  EXPECT_EQ(crypto::sha256_block_count(4096), 65u);
}

TEST(HmacSha256, KnownAnswers) {
  const auto kat = testing::load_kat("hmac_sha256.kat");
  ASSERT_GE(kat.size(), 6u);
  for (const auto& v : kat)
    EXPECT_EQ(to_bytes(crypto::hmac_sha256(v.key, v.input)), v.expected) << "line " << v.line;
}

TEST(HmacSha256, MatchesOpenSsl) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto key = testing::random_bytes(rng, rng() % 140);
    const auto msg = testing::random_bytes(rng, rng() % 500);
    EXPECT_EQ(to_bytes(crypto::hmac_sha256(key, msg)), testing::ossl_hmac(key, msg));
  }
}

TEST(Aes256Cbc, KnownAnswers) {
  const auto kat = testing::load_kat("aes256_cbc.kat");
  ASSERT_GE(kat.size(), 4u);
  for (const auto& v : kat) {
    const auto k = split_key_iv(v.key);
    EXPECT_EQ(crypto::aes256_cbc_encrypt(k, v.input), v.expected) << "line " << v.line;
    EXPECT_EQ(crypto::aes256_cbc_decrypt(k, v.expected), v.input) << "line " << v.line;
  }
}

TEST(Aes256Cbc, MatchesOpenSsl) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto key_iv = testing::random_bytes(rng, 48);
    const auto k = split_key_iv(key_iv);
    const auto pt = testing::random_bytes(rng, 16 * (rng() % 20 + 1));
    const Bytes key(key_iv.begin(), key_iv.begin() + 32), iv(key_iv.begin() + 32, key_iv.end());
    const auto ct = crypto::aes256_cbc_encrypt(k, pt);
    EXPECT_EQ(ct, testing::ossl_aes_cbc(key, iv, pt, true));
    EXPECT_EQ(crypto::aes256_cbc_decrypt(k, ct), pt);
  }
}

TEST(Aes256Cbc, RejectsPartialBlocks) {
  crypto::AesKeyIv k;
  EXPECT_THROW(crypto::aes256_cbc_encrypt(k, Bytes(15)), ValidationError);
  EXPECT_THROW(crypto::aes256_cbc_decrypt(k, Bytes(17)), ValidationError);
}

TEST(Hex, RoundTrip) {
  const Bytes b{0x00, 0x7f, 0xff, 0x10};
  EXPECT_EQ(crypto::to_hex(b), "007fff10");
  EXPECT_EQ(crypto::from_hex("007FFF10"), b);
  EXPECT_THROW(crypto::from_hex("abc"), ValidationError);
}

TEST(Sha256, ZeroBlockMatchesOpenSsl) {
  const Bytes zeros(64, 0);
  EXPECT_EQ(to_bytes(crypto::sha256(zeros)), testing::ossl_sha256(zeros));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto msg = testing::random_bytes(rng, rng() % 1000);
    EXPECT_EQ(to_bytes(crypto::sha256(msg)), testing::ossl_sha256(msg));
  }
}

TEST(HmacSha256, ZeroKeyEmptyMessage) {
  const Bytes key(32, 0), msg;
  EXPECT_EQ(to_bytes(crypto::hmac_sha256(key, msg)), testing::ossl_hmac(key, msg));
}

TEST(HmacSha256, NestedHashStructure) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const auto key = testing::random_bytes(rng, rng() % 65);
    const auto msg = testing::random_bytes(rng, rng() % 200);
    Bytes k0(64, 0);
    std::copy(key.begin(), key.end(), k0.begin());
    Bytes inner, outer;
    for (auto b : k0) inner.push_back(b ^ 0x36);
    inner.insert(inner.end(), msg.begin(), msg.end());
    for (auto b : k0) outer.push_back(b ^ 0x5c);
    const auto ih = crypto::sha256(inner);
    outer.insert(outer.end(), ih.begin(), ih.end());
    EXPECT_EQ(crypto::hmac_sha256(key, msg), crypto::sha256(outer));
  }
}

TEST(Aes256Cbc, ZeroKeyZeroBlock) {
  const crypto::AesKeyIv k{};
  const Bytes zero16(16, 0), zero32(32, 0);
  const auto ct = crypto::aes256_cbc_encrypt(k, zero16);
  EXPECT_EQ(ct, testing::ossl_aes_cbc(zero32, zero16, zero16, true));
  EXPECT_EQ(crypto::aes256_cbc_decrypt(k, ct), zero16);
}

TEST(Aes256Cbc, ChainingPropagatesFlips) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 20; ++i) {
    const auto k = split_key_iv(testing::random_bytes(rng, 48));
    const auto pt = testing::random_bytes(rng, 64);
    auto ct = crypto::aes256_cbc_encrypt(k, pt);
    const std::size_t blk = rng() % 3, bit = rng() % 128;
    ct[16 * blk + bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    const auto out = crypto::aes256_cbc_decrypt(k, ct);
    EXPECT_NE(Bytes(out.begin() + 16 * blk, out.begin() + 16 * (blk + 1)),
              Bytes(pt.begin() + 16 * blk, pt.begin() + 16 * (blk + 1)));
    for (std::size_t j = 0; j < 16; ++j) {
      const std::size_t at = 16 * (blk + 1) + j;
      const std::uint8_t expect_diff = j == bit / 8 ? static_cast<std::uint8_t>(1u << (bit % 8)) : 0;
      EXPECT_EQ(out[at] ^ pt[at], expect_diff);
    }
    for (std::size_t at = 16 * (blk + 2); at < 64; ++at) EXPECT_EQ(out[at], pt[at]);
  }
}

TEST(RsaModexp, SmallValues) {
  EXPECT_EQ(crypto::rsa_modexp(5, 3, 7), BigUint(6));
  const BigUint m = BigUint::from_dec("1000000007");
  EXPECT_EQ(crypto::rsa_modexp(123456, 1, m), BigUint(123456));
  EXPECT_EQ(crypto::rsa_modexp(123456, 0, m), BigUint(1));
}

TEST(BigUint, ArithmeticMatchesBoost) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const auto a_bytes = testing::random_bytes(rng, rng() % 80 + 1);
    const auto b_bytes = testing::random_bytes(rng, rng() % 60 + 1);
    const BigUint a = BigUint::from_bytes_be(a_bytes), b = BigUint::from_bytes_be(b_bytes);
    const cpp_int A = testing::to_cpp(a), B = testing::to_cpp(b);
    EXPECT_EQ(testing::to_cpp(a + b), A + B);
    EXPECT_EQ(testing::to_cpp(a * b), A * B);
    if (!b.is_zero()) {
      EXPECT_EQ(testing::to_cpp(a / b), A / B);
      EXPECT_EQ(testing::to_cpp(a % b), A % B);
    }
    if (a >= b) EXPECT_EQ(testing::to_cpp(a - b), A - B);
    const std::size_t s = rng() % 100;
    EXPECT_EQ(testing::to_cpp(a << s), A << s);
    EXPECT_EQ(testing::to_cpp(a >> s), A >> s);
    EXPECT_EQ(a.bit_length(), A == 0 ? 0u : boost::multiprecision::msb(A) + 1);
  }
}

TEST(BigUint, TextConversions) {
  const BigUint v = BigUint::from_dec("340282366920938463463374607431768211457");
  EXPECT_EQ(v.to_hex(), "100000000000000000000000000000001");
  EXPECT_EQ(BigUint::from_hex(v.to_hex()), v);
  EXPECT_EQ(v.to_dec(), "340282366920938463463374607431768211457");
  EXPECT_EQ(BigUint(0).to_dec(), "0");
  EXPECT_EQ(BigUint(258).to_bytes_be(4), (Bytes{0, 0, 1, 2}));
  EXPECT_THROW(BigUint(1) / BigUint(0), std::domain_error);
}

TEST(RsaModexp, MatchesBoostPowm) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 60; ++i) {
    auto m_bytes = testing::random_bytes(rng, rng() % 64 + 2);
    m_bytes.back() |= 1;
    const BigUint m = BigUint::from_bytes_be(m_bytes);
    if (m <= BigUint(1)) continue;
    const BigUint base = BigUint::from_bytes_be(testing::random_bytes(rng, rng() % 70 + 1));
    const BigUint exp = BigUint::from_bytes_be(testing::random_bytes(rng, rng() % 40 + 1));
    EXPECT_EQ(testing::to_cpp(crypto::rsa_modexp(base, exp, m)),
              boost::multiprecision::powm(testing::to_cpp(base), testing::to_cpp(exp), testing::to_cpp(m)));
  }
  EXPECT_THROW(crypto::rsa_modexp(2, 3, 1), ValidationError);
}

cpp_int random_prime(boost::random::mt19937& gen, unsigned bits) {
  boost::random::uniform_int_distribution<cpp_int> dist(cpp_int(1) << (bits - 1), (cpp_int(1) << bits) - 1);
  while (true) {
    cpp_int p = dist(gen) | 1 | (cpp_int(1) << (bits - 2));
    if (boost::multiprecision::miller_rabin_test(p, 25, gen)) return p;
  }
}

TEST(RsaModexp, RoundTripOnGeneratedKeys) {
  boost::random::mt19937 gen(23);
  std::mt19937_64 rng(29);
  for (unsigned bits : {512u, 1024u}) {
    for (int k = 0; k < 2; ++k) {
      cpp_int n, d;
      const cpp_int e = 65537;
      while (true) {
        const cpp_int p = random_prime(gen, bits / 2), q = random_prime(gen, bits / 2);
        n = p * q;
        const cpp_int phi = (p - 1) * (q - 1);
        if (boost::multiprecision::msb(n) + 1 != bits || boost::multiprecision::gcd(e, phi) != 1) continue;
        d = boost::integer::mod_inverse(e, phi);
        break;
      }
      crypto::RsaParams pub{testing::from_cpp(n), testing::from_cpp(e), bits};
      crypto::RsaParams priv{testing::from_cpp(n), testing::from_cpp(d), bits};
      EXPECT_NO_THROW(crypto::validate(pub));
      EXPECT_NO_THROW(crypto::validate(priv));
      for (int i = 0; i < 5; ++i) {
        const BigUint msg = BigUint::from_bytes_be(testing::random_bytes(rng, bits / 8 - 1));
        const BigUint c = crypto::rsa_modexp(msg, pub.exponent, pub.modulus);
        EXPECT_EQ(crypto::rsa_modexp(c, priv.exponent, priv.modulus), msg);
      }
    }
  }
}

TEST(RsaParams, Validation) {
  EXPECT_THROW(crypto::validate({BigUint(15), BigUint(3), 512}), ValidationError);
  const BigUint even = (BigUint(1) << 511) + BigUint(2);
  EXPECT_THROW(crypto::validate({even, BigUint(3), 512}), ValidationError);
  const BigUint odd = (BigUint(1) << 511) + BigUint(1);
  EXPECT_NO_THROW(crypto::validate({odd, BigUint(3), 512}));
  EXPECT_THROW(crypto::validate({odd, BigUint(0), 512}), ValidationError);
  EXPECT_THROW(crypto::validate({odd, BigUint(3), 768}), ValidationError);
}

}  // namespace
}  // namespace secacc
