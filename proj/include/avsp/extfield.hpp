#pragma once

#include <cstdint>
#include <vector>

#include "avsp/gf.hpp"

namespace avsp {

// Arithmetic in GF(p^e) for the internal tower constructions (spreads, the
// quadric model). Elements are 0..p^e-1 encoded as base-p digit vectors of
// polynomial residues. The reducing polynomial is the lexicographically
// smallest monic irreducible of its degree, found by exhaustive test, so the
// arithmetic is reproducible without shipping a table for every size.
class ExtField {
public:
  ExtField(int p, int e);

  int p() const { return p_; }
  int e() const { return e_; }
  int size() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const { return add_[a * q_ + b]; }
  int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int inv(int a) const;
  int pow(int a, long long k) const;

  int primitive_element() const { return primitive_; }

  // subfield of order p^d (d | e): returns the p^d elements fixed by the
  // d-th Frobenius power, in a deterministic order with 0, 1 first
  std::vector<int> subfield(int d) const;

  // embedding of the public GF(q) tables into this field (q = p^d, d | e):
  // image[i] = element representing Gf::get(q) code i
  std::vector<int> embed_gf(int q) const;

  // coordinates of x over the basis 1, beta, beta^2, ..., beta^{k-1} where
  // beta generates the degree-k extension over the subfield of order p^d,
  // e = d*k; returned as subfield elements
  std::vector<int> coords_over_subfield(int x, int d, int beta) const;

  // a fixed element of degree k over the subfield of order p^d
  int subfield_extension_generator(int d) const;

private:
  int p_, e_, q_;
  std::vector<int> modulus_;
  std::vector<int> add_, mul_, neg_;
  int primitive_;
};

}  // namespace avsp
