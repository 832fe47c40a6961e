#pragma once

#include "avsp/avsp.hpp"

namespace avsp {

// Desarguesian spread construction: n even, elements of dimension n/2,
// q^{n/2} of them after removing the spread element placed inside the
// hyperplane at infinity. Tight and irreducible.
Avsp from_spread(int n, int q);

// Lifted maximum-rank-distance construction: n odd >= 5, q^{(n+1)/2}
// elements of dimension (n-1)/2. Tight and irreducible.
Avsp from_lifted_mrd(int n, int q);

// Hyperbolic-quadric construction in PG(6,q) for even q: q^3 solids whose
// parts at infinity are the totally singular planes of Q+(5,q) disjoint from
// a fixed one. Verifies the permutation-polynomial precondition.
Avsp klein_quadric(int q);

// The q^3 planes of Q+(5,q) disjoint from a fixed totally singular plane,
// embedded as a part at infinity for PG(6,q); defined for every prime power.
InfinityPart klein_infinity_part(int q);

// evaluate the quadric form behind klein_infinity_part on a point of the
// hyperplane at infinity of PG(6,q)
int klein_quadric_value(const Vec& point_in_h_infinity, int q);

// the fixed plane pi the klein planes avoid
Subspace klein_fixed_plane(int q);

// Plus-three recursion: from a tight irreducible avsp of PG(n-1,2) with an
// element of dimension n-2, build one of PG(n+1,2) with three more elements
// and an element of dimension n. Choices are made lexicographically.
Avsp recursive_plus3(const Avsp& input);

// iterated plus-three chain from the n=4 / n=5 base cases; size (3n-3)/2
// rounded down
Avsp chain(int n);

// recursive hyperplane peeling: tight (generally reducible) avsp of size
// (q-1)(n-1)+1
Avsp tight_chain(int n, int q);

// the four 8-plane configurations in PG(5,2) classified by the maximum
// number of planes through a point (2, 3, 4 or 5), as parts at infinity for
// PG(6,2)
InfinityPart plane_octet(int gamma0);

}  // namespace avsp
