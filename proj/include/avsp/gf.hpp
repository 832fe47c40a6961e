#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace avsp {

// Arithmetic tables for GF(q), q = p^e <= 9. Field elements are encoded as
// 0..q-1; for extension fields the encoding is the base-p digit vector of the
// polynomial residue, least significant digit = constant term. The reducing
// polynomial per q is fixed so that all arithmetic is reproducible.
class Gf {
public:
  static const Gf& get(int q);

  int q() const { return q_; }
  int p() const { return p_; }
  int e() const { return e_; }
  const std::vector<int>& modulus() const { return modulus_; }

  std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + b]; }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + neg_[b]]; }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[a * q_ + b]; }
  std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }
  std::uint8_t inv(std::uint8_t a) const {
    if (a == 0) throw std::domain_error("GF inverse of zero");
    return inv_[a];
  }
  std::uint8_t frobenius(std::uint8_t a) const { return frob_[a]; }  // a -> a^p

  // pow by squaring over the table
  std::uint8_t pow(std::uint8_t a, long long k) const;

  bool is_primitive(std::uint8_t a) const;

private:
  explicit Gf(int q);

  int q_, p_, e_;
  std::vector<int> modulus_;  // degree-e reducing polynomial coefficients, length e+1
  std::vector<std::uint8_t> add_, mul_, neg_, inv_, frob_;
};

bool is_prime_power(int q, int* p_out = nullptr, int* e_out = nullptr);

}  // namespace avsp
