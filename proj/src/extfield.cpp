#include "avsp/extfield.hpp"

#include <algorithm>
#include <stdexcept>

namespace avsp {

namespace {

// dense polynomial arithmetic over GF(p), coefficient vectors low-first
using Poly = std::vector<int>;

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mod(Poly a, const Poly& f, int p) {
  a = trim(std::move(a));
  int df = static_cast<int>(f.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= df) {
    int da = static_cast<int>(a.size()) - 1;
    int c = a[da];  // f is monic
    if (c) {
      for (int i = 0; i <= df; ++i)
        a[da - df + i] = ((a[da - df + i] - c * f[i]) % p + p * p) % p;
    }
    a.pop_back();
    a = trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& f, int p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(c), f, p);
}

Poly poly_pow_mod(Poly base, long long k, const Poly& f, int p) {
  Poly r = {1};
  while (k) {
    if (k & 1) r = poly_mul_mod(r, base, f, p);
    base = poly_mul_mod(base, base, f, p);
    k >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, int p) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    // a mod b with b made monic
    int lead = b.back();
    int inv = 1;
    for (int i = 1; i < p; ++i)
      if (lead * i % p == 1) { inv = i; break; }
    Poly bm = b;
    for (auto& x : bm) x = x * inv % p;
    Poly r = poly_mod(a, bm, p);
    a = std::move(b);
    b = trim(std::move(r));
  }
  return a;
}

bool is_irreducible(const Poly& f, int p) {
  int e = static_cast<int>(f.size()) - 1;
  // x^{p^e} == x mod f, and gcd(x^{p^{e/r}} - x, f) = 1 for prime r | e
  Poly x = {0, 1};
  long long pe = 1;
  for (int i = 0; i < e; ++i) pe *= p;
  Poly xe = poly_pow_mod(x, pe, f, p);
  Poly diff = xe;
  diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
  diff[1] = ((diff[1] - 1) % p + p) % p;
  if (!trim(diff).empty()) return false;
  for (int r = 2; r <= e; ++r) {
    if (e % r) continue;
    bool prime = true;
    for (int d = 2; d * d <= r; ++d)
      if (r % d == 0) { prime = false; break; }
    if (!prime) continue;
    long long pd = 1;
    for (int i = 0; i < e / r; ++i) pd *= p;
    Poly xd = poly_pow_mod(x, pd, f, p);
    Poly d2 = xd;
    d2.resize(std::max<std::size_t>(d2.size(), 2), 0);
    d2[1] = ((d2[1] - 1) % p + p) % p;
    Poly g = poly_gcd(f, trim(d2), p);
    if (static_cast<int>(trim(g).size()) - 1 >= 1) return false;
  }
  return true;
}

}  // namespace

ExtField::ExtField(int p, int e) : p_(p), e_(e) {
  q_ = 1;
  for (int i = 0; i < e; ++i) q_ *= p;
  if (q_ > 2048) throw std::invalid_argument("extension field too large");

  if (e == 1) {
    modulus_ = {0, 1};
  } else {
    // lexicographically smallest monic irreducible of degree e: iterate the
    // lower coefficients as a base-p counter
    long long lower = 1;
    for (int i = 0; i < e; ++i) lower *= p;
    bool found = false;
    for (long long code = 1; code < lower && !found; ++code) {
      Poly f(e + 1, 0);
      f[e] = 1;
      long long t = code;
      for (int i = 0; i < e; ++i) { f[i] = static_cast<int>(t % p); t /= p; }
      if (is_irreducible(f, p)) {
        modulus_ = f;
        found = true;
      }
    }
    if (!found) throw std::logic_error("no irreducible polynomial found");
  }

  auto to_digits = [&](int a) {
    Poly d(e_);
    for (int i = 0; i < e_; ++i) { d[i] = a % p_; a /= p_; }
    return trim(d);
  };
  auto from_poly = [&](const Poly& f) {
    int a = 0;
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) a = a * p_ + f[i];
    return a;
  };

  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  for (int a = 0; a < q_; ++a) {
    Poly da = to_digits(a);
    Poly na = da;
    for (auto& x : na) x = (p_ - x) % p_;
    neg_[a] = from_poly(na);
    for (int b = 0; b < q_; ++b) {
      Poly db = to_digits(b);
      Poly s(std::max(da.size(), db.size()), 0);
      for (std::size_t i = 0; i < s.size(); ++i) {
        int x = (i < da.size() ? da[i] : 0) + (i < db.size() ? db[i] : 0);
        s[i] = x % p_;
      }
      add_[a * q_ + b] = from_poly(trim(s));
      mul_[a * q_ + b] =
          e_ == 1 ? (a * b) % p_ : from_poly(poly_mul_mod(da, db, modulus_, p_));
    }
  }
  primitive_ = 0;
  for (int a = 2; a < q_ && !primitive_; ++a) {
    int ord = 1, x = a;
    while (x != 1) { x = mul(x, a); ++ord; }
    if (ord == q_ - 1) primitive_ = a;
  }
  if (q_ == 2) primitive_ = 1;
}

int ExtField::inv(int a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  for (int b = 1; b < q_; ++b)
    if (mul(a, b) == 1) return b;
  throw std::logic_error("no inverse found");
}

int ExtField::pow(int a, long long k) const {
  if (k < 0) { a = inv(a); k = -k; }
  int r = 1;
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

std::vector<int> ExtField::subfield(int d) const {
  if (e_ % d != 0) throw std::invalid_argument("not a subfield degree");
  long long pd = 1;
  for (int i = 0; i < d; ++i) pd *= p_;
  std::vector<int> elems;
  for (int a = 0; a < q_; ++a)
    if (pow(a, pd) == a) elems.push_back(a);
  return elems;
}

std::vector<int> ExtField::embed_gf(int q) const {
  const Gf& F = Gf::get(q);
  if (F.p() != p_ || e_ % F.e() != 0)
    throw std::invalid_argument("field does not embed");
  // root of the Gf modulus inside this field
  const auto& mod = F.modulus();
  int root = -1;
  if (F.e() == 1) {
    root = 0;  // unused
  } else {
    for (int a = 0; a < q_; ++a) {
      int v = 0;
      for (int d = static_cast<int>(mod.size()) - 1; d >= 0; --d) {
        v = add(mul(v, a), mod[d] % p_);
      }
      if (v == 0) { root = a; break; }
    }
    if (root < 0) throw std::logic_error("no root of subfield modulus");
  }
  std::vector<int> image(q);
  for (int code = 0; code < q; ++code) {
    // digits of code over GF(p), evaluated at the root
    int t = code, v = 0, pw = 1;
    for (int i = 0; i < F.e(); ++i) {
      int digit = t % F.p();
      t /= F.p();
      int term = 0;
      for (int c = 0; c < digit; ++c) term = add(term, pw);
      v = add(v, term);
      pw = (F.e() == 1) ? pw : mul(pw, root);
    }
    image[code] = v;
  }
  if (F.e() == 1) {
    for (int code = 0; code < q; ++code) {
      int v = 0;
      for (int c = 0; c < code; ++c) v = add(v, 1);
      image[code] = v;
    }
  }
  return image;
}

int ExtField::subfield_extension_generator(int d) const {
  // smallest element not in any proper intermediate subfield containing the
  // order-p^d subfield: degree over it equals e/d
  int k = e_ / d;
  for (int a = 2; a < q_; ++a) {
    bool in_proper = false;
    for (int r = 1; r < k; ++r) {
      if (k % r) continue;
      long long pdr = 1;
      for (int i = 0; i < d * r; ++i) pdr *= p_;
      if (pow(a, pdr) == a) { in_proper = true; break; }
    }
    if (!in_proper) return a;
  }
  throw std::logic_error("no extension generator found");
}

std::vector<int> ExtField::coords_over_subfield(int x, int d, int beta) const {
  int k = e_ / d;
  auto sub = subfield(d);
  // basis 1, beta, ..., beta^{k-1}; solve by exhaustive digits (subfield is
  // small); deterministic and only used at construction time
  std::vector<int> basis(k);
  basis[0] = 1;
  for (int i = 1; i < k; ++i) basis[i] = mul(basis[i - 1], beta);
  std::vector<int> digits(k, 0);
  long long total = 1;
  for (int i = 0; i < k; ++i) total *= static_cast<long long>(sub.size());
  for (long long code = 0; code < total; ++code) {
    long long t = code;
    int v = 0;
    for (int i = 0; i < k; ++i) {
      digits[i] = sub[t % sub.size()];
      t /= static_cast<long long>(sub.size());
      v = add(v, mul(digits[i], basis[i]));
    }
    if (v == x) return digits;
  }
  throw std::logic_error("coordinate expansion failed");
}

}  // namespace avsp
