#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace stw {

// Error with a stable machine-readable code ("NotAssociative", "ParseError", ...)
// plus a human message carrying the witness data.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

// Prime field GF(p), 2 <= p < 2^31.  Residues live in [0, p) as uint32_t;
// intermediate products use uint64_t.
struct Field {
  uint32_t p;

  explicit Field(uint32_t modulus) : p(modulus) {
    if (p < 2 || p >= (1u << 31) || !is_prime(p))
      throw Error("BadParameter", "modulus " + std::to_string(modulus) + " is not a prime in [2, 2^31)");
  }

  static bool is_prime(uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint32_t q = 3; (uint64_t)q * q <= n; q += 2)
      if (n % q == 0) return false;
    return true;
  }

  uint32_t reduce(uint64_t v) const { return (uint32_t)(v % p); }
  uint32_t reduce_signed(int64_t v) const {
    int64_t r = v % (int64_t)p;
    if (r < 0) r += p;
    return (uint32_t)r;
  }
  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
  uint32_t mul(uint32_t a, uint32_t b) const { return (uint32_t)((uint64_t)a * b % p); }

  uint32_t pow(uint32_t a, uint64_t e) const {
    uint64_t r = 1, base = a % p;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return (uint32_t)r;
  }

  uint32_t inv(uint32_t a) const {
    if (a == 0) throw Error("BadParameter", "inverse of 0");
    return pow(a, p - 2);
  }

  bool operator==(const Field& o) const { return p == o.p; }
};

}  // namespace stw
