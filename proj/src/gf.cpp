#include "avsp/gf.hpp"

#include <map>
#include <mutex>

namespace avsp {

bool is_prime_power(int q, int* p_out, int* e_out) {
  if (q < 2) return false;
  for (int p = 2; p <= q; ++p) {
    bool prime = true;
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) { prime = false; break; }
    if (!prime) continue;
    if (q % p) continue;
    int e = 0, m = q;
    while (m % p == 0) { m /= p; ++e; }
    if (m != 1) return false;
    if (p_out) *p_out = p;
    if (e_out) *e_out = e;
    return true;
  }
  return false;
}

namespace {

// fixed reducing polynomials, constant term first
const std::map<int, std::vector<int>>& moduli() {
  static const std::map<int, std::vector<int>> m = {
      {4, {1, 1, 1}},     // x^2 + x + 1 over GF(2)
      {8, {1, 1, 0, 1}},  // x^3 + x + 1 over GF(2)
      {9, {1, 0, 1}},     // x^2 + 1 over GF(3)
  };
  return m;
}

std::vector<int> to_digits(int a, int p, int e) {
  std::vector<int> d(e);
  for (int i = 0; i < e; ++i) { d[i] = a % p; a /= p; }
  return d;
}

int from_digits(const std::vector<int>& d, int p) {
  int a = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) a = a * p + d[i];
  return a;
}

// multiply polynomials over GF(p), reduce by modulus
int poly_mul_mod(int a, int b, int p, int e, const std::vector<int>& mod) {
  std::vector<int> da = to_digits(a, p, e), db = to_digits(b, p, e);
  std::vector<int> prod(2 * e - 1, 0);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < e; ++j)
      prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  // reduce: x^e = -(mod[0] + mod[1] x + ... + mod[e-1] x^{e-1}) since mod monic
  for (int d = 2 * e - 2; d >= e; --d) {
    int c = prod[d];
    if (!c) continue;
    prod[d] = 0;
    for (int i = 0; i < e; ++i)
      prod[d - e + i] = ((prod[d - e + i] - c * mod[i]) % p + p * p) % p;
  }
  prod.resize(e);
  return from_digits(prod, p);
}

}  // namespace

Gf::Gf(int q) : q_(q) {
  if (!is_prime_power(q, &p_, &e_) || q > 9)
    throw std::invalid_argument("unsupported field size");
  if (e_ == 1) {
    modulus_ = {0, 1};  // x - 0 placeholder for prime fields
  } else {
    modulus_ = moduli().at(q);
    // exhaustive irreducibility check: no root and, for degree <= 3, that
    // settles it (our extensions have e <= 3)
    for (int a = 0; a < p_; ++a) {
      int v = 0;
      for (int d = e_; d >= 0; --d) v = (v * a + modulus_[d]) % p_;
      if (v == 0) throw std::logic_error("reducing polynomial has a root");
    }
  }
  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.resize(q);
  frob_.resize(q);
  for (int a = 0; a < q; ++a) {
    auto da = to_digits(a, p_, e_);
    for (int b = 0; b < q; ++b) {
      auto db = to_digits(b, p_, e_);
      std::vector<int> s(e_);
      for (int i = 0; i < e_; ++i) s[i] = (da[i] + db[i]) % p_;
      add_[a * q + b] = static_cast<std::uint8_t>(from_digits(s, p_));
      mul_[a * q + b] = static_cast<std::uint8_t>(
          e_ == 1 ? (a * b) % p_ : poly_mul_mod(a, b, p_, e_, modulus_));
    }
    std::vector<int> n(e_);
    for (int i = 0; i < e_; ++i) n[i] = (p_ - da[i]) % p_;
    neg_[a] = static_cast<std::uint8_t>(from_digits(n, p_));
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) inv_[a] = static_cast<std::uint8_t>(b);
  for (int a = 0; a < q; ++a) {
    std::uint8_t r = 1;
    for (int i = 0; i < p_; ++i) r = mul_[r * q + a];
    frob_[a] = a == 0 ? 0 : r;
  }
  frob_[0] = 0;
}

std::uint8_t Gf::pow(std::uint8_t a, long long k) const {
  if (k < 0) { a = inv(a); k = -k; }
  std::uint8_t r = 1;
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

bool Gf::is_primitive(std::uint8_t a) const {
  if (a == 0) return false;
  int ord = 1;
  std::uint8_t x = a;
  while (x != 1) { x = mul(x, a); ++ord; }
  return ord == q_ - 1;
}

const Gf& Gf::get(int q) {
  static std::mutex mu;
  static std::map<int, Gf> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, Gf(q)).first;
  return it->second;
}

}  // namespace avsp
