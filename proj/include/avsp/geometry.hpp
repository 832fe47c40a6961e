#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "avsp/bitset.hpp"
#include "avsp/subspace.hpp"

namespace avsp {

long long gaussian_binomial(int n, int k, int q);

// Shared lookup tables for PG(n-1,q): indexed projective points, the point
// sets of all hyperplanes, and affine point indexing under the convention
// that the hyperplane at infinity is {x1 = 0} and affine points are
// normalized to x1 = 1.
class Space {
public:
  static const Space& get(int n, int q);

  int n() const { return n_; }
  int q() const { return q_; }

  int num_points() const { return static_cast<int>(points_.size()); }
  int num_affine() const { return static_cast<int>(affine_.size()); }
  int num_hyperplanes() const { return static_cast<int>(hyperplanes_.size()); }

  const Vec& point(int i) const { return points_[i]; }
  int point_index(const Vec& v) const;  // v need not be normalized

  // affine points are those with x1 = 1; affine index is the position in the
  // lex-sorted list of such points
  const Vec& affine_point(int i) const { return points_[affine_[i]]; }
  int affine_index(const Vec& v) const;
  int point_to_affine(int point_idx) const { return point_to_affine_[point_idx]; }

  // point set of the i-th hyperplane (bitset over point indices); the dual
  // coordinates of hyperplane i are point(i)
  const Bitset& hyperplane(int i) const { return hyperplanes_[i]; }
  const Bitset& infinity_points() const { return infinity_; }

  Bitset point_set(const Subspace& s) const;
  Bitset affine_set(const Subspace& s) const;  // bits over affine indices
  Subspace span_of_points(const Bitset& pts) const;

  Subspace hyperplane_at_infinity() const;
  Subspace full_space() const;

private:
  Space(int n, int q);

  int n_, q_;
  std::vector<Vec> points_;              // normalized, sorted lex
  std::map<Vec, int> index_;
  std::vector<int> affine_;              // point indices with x1 = 1
  std::vector<int> point_to_affine_;     // -1 when at infinity
  std::vector<Bitset> hyperplanes_;
  Bitset infinity_;
};

// Enumerates the dim-subspaces of PG(n-1,q) in a deterministic order (by RREF
// pivot pattern, then free entries). The optional predicate filters results.
// Enumeration is index-driven so callers can partition [0, count) ranges.
class SubspaceEnumerator {
public:
  SubspaceEnumerator(int n, int q, int dim);

  long long count() const { return total_; }
  Subspace at(long long index) const;

  std::vector<Subspace> all(
      const std::function<bool(const Subspace&)>& pred = nullptr) const;

private:
  int n_, q_, dim_;
  std::vector<std::vector<int>> pivot_sets_;
  std::vector<long long> block_sizes_;  // free-entry combinations per pivot set
  std::vector<long long> block_start_;
  long long total_;
};

std::vector<Subspace> enumerate_subspaces(
    int n, int q, int dim,
    const std::function<bool(const Subspace&)>& pred = nullptr);

// dim-subspaces of the given ambient subspace (coordinates mapped through its
// basis)
std::vector<Subspace> enumerate_subspaces_within(
    const Subspace& ambient, int dim,
    const std::function<bool(const Subspace&)>& pred = nullptr);

}  // namespace avsp
