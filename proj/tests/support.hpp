#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/sha.h>

#include "secacc/crypto.hpp"

namespace secacc::testing {

using crypto::Bytes;

struct KatVector {
  Bytes input;
  Bytes key;
  Bytes expected;
  std::size_t line = 0;
};

inline std::vector<KatVector> load_kat(const std::string& name) {
  const std::string path = std::string(SECACC_FIXTURE_DIR) + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing fixture " + path);
  std::vector<KatVector> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty() || line[0] == '#') continue;
    auto a = line.find(',');
    auto b = line.find(',', a + 1);
    out.push_back({crypto::from_hex(line.substr(0, a)), crypto::from_hex(line.substr(a + 1, b - a - 1)),
                   crypto::from_hex(line.substr(b + 1)), n});
  }
  return out;
}

inline Bytes random_bytes(std::mt19937_64& rng, std::size_t n) {
  Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng());
  return out;
}

// OpenSSL reference implementations.
inline Bytes ossl_sha256(const Bytes& m) {
  Bytes out(32);
  SHA256(m.data(), m.size(), out.data());
  return out;
}

inline Bytes ossl_hmac(const Bytes& key, const Bytes& m) {
  Bytes out(32);
  unsigned len = 0;
  HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), m.data(), m.size(), out.data(), &len);
  out.resize(len);
  return out;
}

inline Bytes ossl_aes_cbc(const Bytes& key, const Bytes& iv, const Bytes& in, bool encrypt) {
  EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
  EVP_CipherInit_ex(ctx, EVP_aes_256_cbc(), nullptr, key.data(), iv.data(), encrypt ? 1 : 0);
  EVP_CIPHER_CTX_set_padding(ctx, 0);
  Bytes out(in.size() + 16);
  int len = 0, fin = 0;
  EVP_CipherUpdate(ctx, out.data(), &len, in.data(), static_cast<int>(in.size()));
  EVP_CipherFinal_ex(ctx, out.data() + len, &fin);
  EVP_CIPHER_CTX_free(ctx);
  out.resize(static_cast<std::size_t>(len + fin));
  return out;
}

// Boost.Multiprecision reference for big-number arithmetic.
using boost::multiprecision::cpp_int;

inline cpp_int to_cpp(const crypto::BigUint& v) {
  cpp_int r;
  const auto bytes = v.to_bytes_be();
  if (!bytes.empty()) boost::multiprecision::import_bits(r, bytes.begin(), bytes.end(), 8);
  return r;
}

inline crypto::BigUint from_cpp(const cpp_int& v) {
  std::vector<std::uint8_t> bytes;
  if (v != 0) boost::multiprecision::export_bits(v, std::back_inserter(bytes), 8);
  return crypto::BigUint::from_bytes_be(bytes);
}

}  // namespace secacc::testing
