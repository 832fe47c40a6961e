#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avsp/avsp.hpp"

namespace avsp {

enum class TypeStatus {
  kRealized,              // known realization (published table or re-derived)
  kExcludedRule,          // excluded by a combinatorial rule
  kExcludedComputational, // excluded by exhaustive computation (known table)
  kOpen,
};

struct TypeInfo {
  TypeVector type;
  TypeStatus status = TypeStatus::kOpen;
  std::vector<std::string> reasons;  // rule names / provenance notes
};

struct TypeRequirements {
  bool tight = true;
  bool irreducible = true;
};

// Enumerates all solutions of the packing condition for PG(n-1,q) and tags
// each with its exclusion rule, known computational exclusion, known
// realization, or open status.
std::vector<TypeInfo> feasible_types(int n, int q,
                                     TypeRequirements req = {});

// Greedy split of a type satisfying the packing condition into q - m_{n-1}
// columns, each satisfying the packing condition one dimension down.
// result[j][i] = number of i-dimensional elements assigned to column j.
std::vector<std::map<int, int>> decompose_type(const TypeVector& type, int n,
                                               int q);

struct Tail4Structure {
  Subspace B;  // common (k-1)-space
  Subspace E;  // plane
  Subspace L;  // line inside E
};

// Structure of a 2-divisible set of four k-spaces in PG(n-1,2): S consists of
// <P,B> for the four points P of E outside L. Throws if S is not 2-divisible.
Tail4Structure tail4_structure(const std::vector<Subspace>& S);

bool is_spanning(const InfinityPart& up);

struct PartitionPackingWitness {
  // c[j][i] = number of (i+1)-dimensional avsp elements assigned whole to
  // hyperplane j
  std::vector<std::map<int, int>> c;
};

// Decides the integer feasibility of the hyperplane-split system for the part
// at infinity and a hyperplane K of the hyperplane at infinity.
std::optional<PartitionPackingWitness> partition_packing_feasible(
    const InfinityPart& up, const Subspace& K);

// count-level variant: a[i] = number of i-dimensional infinity elements
// contained in K, m[i+1] = avsp type multiplicities
std::optional<PartitionPackingWitness> partition_packing_feasible_counts(
    const std::map<int, int>& infinity_type, const std::map<int, int>& a_counts,
    int n, int q);

enum class PointSetClass {
  kLine,
  kTwoDisjointLines,
  kAffineSolid,
  kPlanePlusLineMinusPoint,
};

// classification of 2-divisible point sets of size 3, 6, 8 in PG(3,2)
PointSetClass classify_2div_pointset(const std::vector<Subspace>& points);

std::string to_string(TypeStatus s);
std::string to_string(PointSetClass c);

}  // namespace avsp
