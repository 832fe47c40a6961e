#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "avsp/gf.hpp"

namespace avsp {

using Vec = std::vector<std::uint8_t>;  // coordinate vector over GF(q)

// A subspace of PG(n-1,q), stored as a reduced row echelon basis. The RREF is
// unique, so equality of subspaces is equality of representations. Dimensions
// are algebraic: a u-space has (q^u - 1)/(q - 1) projective points.
class Subspace {
public:
  Subspace() = default;
  Subspace(int n, int q) : n_(n), q_(q) {}  // zero subspace

  static Subspace rref(const std::vector<Vec>& rows, int n, int q);
  static Subspace from_rref_rows(std::vector<Vec> rows, int n, int q);  // trusted

  int n() const { return n_; }
  int q() const { return q_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec>& basis() const { return rows_; }

  long long num_points() const;  // (q^dim - 1)/(q - 1)

  bool contains(const Vec& v) const;          // projective point membership
  bool contains(const Subspace& other) const;

  Subspace join(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  // all projective points, leading nonzero entry normalized to 1, sorted lex
  std::vector<Vec> points() const;

  // points of this subspace outside {x1 = 0}; throws if contained in it
  std::vector<Vec> affine_points() const;
  bool in_hyperplane_at_infinity() const;  // every basis row has x1 = 0

  std::string to_string() const;  // <gen1,gen2,...>
  static Subspace parse(const std::string& text, int n, int q);

  bool operator==(const Subspace& o) const {
    return n_ == o.n_ && q_ == o.q_ && rows_ == o.rows_;
  }
  // lexicographic on the concatenated RREF rows
  bool operator<(const Subspace& o) const { return rows_ < o.rows_; }

private:
  int n_ = 0, q_ = 0;
  std::vector<Vec> rows_;
};

// in-place row reduction; returns rank
int row_reduce(std::vector<Vec>& rows, int n, int q);

Vec normalize_point(Vec v, int q);  // scale so leading nonzero entry is 1
std::string vec_to_string(const Vec& v);
Vec vec_parse(const std::string& s, int n, int q);

}  // namespace avsp
