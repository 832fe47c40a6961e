#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avsp/geometry.hpp"
#include "avsp/subspace.hpp"

namespace avsp {

// Multiplicities of element dimensions: m[d] elements of algebraic dimension
// d, 1 <= d <= n-1. Printed as "k1^m1 k2^m2 ..." with dimensions descending.
class TypeVector {
public:
  TypeVector() = default;
  explicit TypeVector(std::map<int, int> m);

  int multiplicity(int dim) const;
  void set(int dim, int mult);
  const std::map<int, int>& mults() const { return m_; }  // only nonzero, asc

  int size() const;               // total number of elements
  int min_dim() const;            // smallest dimension with m > 0 (0 if empty)
  int max_dim() const;
  long long affine_weight(int q) const;  // sum m_d * q^{d-1}
  bool satisfies_packing(int n, int q) const;

  std::string to_string() const;
  static TypeVector parse(const std::string& text);

  bool operator==(const TypeVector&) const = default;
  bool operator<(const TypeVector& o) const { return m_ < o.m_; }

private:
  std::map<int, int> m_;
};

enum class Provenance { kConstructed, kSearched, kParsed };

// An affine vector space partition of PG(n-1,q): subspaces not contained in
// the hyperplane at infinity {x1 = 0} whose affine parts partition the q^{n-1}
// affine points. Instances are immutable after construction; validity is
// checked by verify(), not enforced here.
struct Avsp {
  int n = 0, q = 0;
  std::vector<Subspace> elements;
  Provenance provenance = Provenance::kConstructed;

  TypeVector type() const;
  int size() const { return static_cast<int>(elements.size()); }
};

// The multiset {U cap Hinf : U in avsp}; the object of the extension problem.
struct InfinityPart {
  int n = 0, q = 0;                 // ambient parameters of the parent space
  std::vector<Subspace> elements;   // all contained in {x1 = 0}; multiset

  TypeVector type() const;  // dimensions as subspaces of PG(n-1,q)
  int size() const { return static_cast<int>(elements.size()); }
};

struct VerifyReport {
  bool valid = false;
  TypeVector type;
  std::vector<Vec> uncovered;       // affine points covered zero times
  std::vector<Vec> multiply_covered;
  std::vector<std::string> element_problems;  // malformed elements

  std::string summary() const;
};

VerifyReport verify(const Avsp& a);

// verify a collection as an avsp of the subspace V (affine points of V are
// those outside {x1 = 0})
VerifyReport verify_within(const Subspace& V,
                           const std::vector<Subspace>& elements);

bool is_tight(const Avsp& a);

enum class IrreducibilityMode { kFast, kOracle };
bool is_irreducible(const Avsp& a,
                    IrreducibilityMode mode = IrreducibilityMode::kFast);

std::vector<Subspace> tail(const Avsp& a);

InfinityPart infinity_part(const Avsp& a);

struct KDecomposition {
  std::vector<Subspace> hyperplanes;               // H_1..H_q containing K
  std::vector<std::vector<Subspace>> collections;  // U^(i), elements of H_i
};

// K must be an (n-2)-space contained in the hyperplane at infinity
KDecomposition k_decomposition(const Avsp& a, const Subspace& K);

// true iff #S == #(H cap S) mod delta for every hyperplane H of the ambient,
// where H cap S counts elements contained in H; S is a multiset of equal-
// dimensional subspaces of the ambient
bool is_delta_divisible(const std::vector<Subspace>& S, const Subspace& ambient,
                        int delta);

struct Spectrum {
  std::vector<long long> a;  // a[i] = hyperplanes containing exactly i elements
};

// spectrum of a set of equal-dimensional subspaces w.r.t. hyperplanes of the
// ambient; asserts the two counting identities
Spectrum spectrum(const std::vector<Subspace>& S, const Subspace& ambient);

}  // namespace avsp
