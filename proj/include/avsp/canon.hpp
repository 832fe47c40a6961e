#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "avsp/avsp.hpp"

namespace avsp {

struct ColoredGraph {
  int n = 0;
  std::vector<Bitset> adj;
  std::vector<int> color;

  void init(int nv) {
    n = nv;
    adj.assign(nv, Bitset(nv));
    color.assign(nv, 0);
  }
  void add_edge(int a, int b) {
    adj[a].set(b);
    adj[b].set(a);
  }
};

struct CanonResult {
  std::vector<int> labeling;                   // vertex -> canonical position
  std::vector<std::uint8_t> certificate;       // iso-invariant byte string
  std::vector<std::vector<int>> generators;    // automorphism generators
  long long leaves = 0;
};

// Individualization-refinement canonical form for vertex-colored graphs.
// The full backtrack tree is explored modulo orbit pruning by discovered
// automorphisms, so the generator list generates the full automorphism group
// and the certificate is the minimum over all leaves.
CanonResult canonize_graph(const ColoredGraph& g);

// order of the permutation group generated by gens (degree = perm length)
unsigned long long permutation_group_order(const std::vector<std::vector<int>>& gens,
                                           int degree);

// ---- geometry instances ----

// Canonical form of an avsp under the stabilizer of the hyperplane at
// infinity in the collineation group of PG(n-1,q).
std::string canonical_form(const Avsp& a);

// Canonical form of a part at infinity under the full collineation group of
// the hyperplane at infinity.
std::string canonical_form(const InfinityPart& up);

// stabilizer orders inside the respective groups
unsigned long long automorphism_group_order(const Avsp& a);
unsigned long long automorphism_group_order(const InfinityPart& up);

// group generators as permutations of the points of PG(n-1,q) (for orbit
// tests): the stabilizer of {x1=0} in PGammaL(n,q)
std::vector<std::vector<int>> hinf_stabilizer_point_generators(int n, int q);

// apply a point permutation (by point index of Space::get(n,q)) to an avsp
Avsp apply_point_map(const Avsp& a, const std::vector<int>& point_perm);
InfinityPart apply_point_map(const InfinityPart& up,
                             const std::vector<int>& point_perm);

}  // namespace avsp
