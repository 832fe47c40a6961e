#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avsp/avsp.hpp"
#include "avsp/conditions.hpp"
#include "avsp/cover.hpp"

namespace avsp {

enum class SearchGoal { kExists, kAll, kCount };

struct SearchLimits {
  long long node_budget = -1;     // <0: unlimited
  double seconds = -1;            // <0: unlimited; checked between subtrees
  int threads = 1;
};

struct SearchProblem {
  int n = 0, q = 0;
  std::optional<TypeVector> type;        // exact type; empty = any
  std::optional<int> size;               // exact size when no type given
  bool tight = false;
  bool irreducible = false;
  std::optional<InfinityPart> extension; // extension mode when set
  std::vector<Subspace> prefix;          // fixed first elements
  bool symmetry_breaking = true;
  SearchGoal goal = SearchGoal::kAll;
  SearchLimits limits;
};

struct SearchResult {
  std::vector<Avsp> witnesses;   // empty in count mode
  long long count = 0;           // solutions seen (after filters)
  bool inconclusive = false;     // budget exceeded before exhausting the space
  long long nodes = 0;
};

SearchResult find_avsps(const SearchProblem& problem);

enum class ExtendMode {
  kExact,    // multiset of intersections with Hinf equals the given part
  kCoverEq,  // every given element lies in exactly one chosen element
  kCoverGe,  // every given element lies in at least one chosen element
};

SearchResult extend_infinity_part(const InfinityPart& up,
                                  ExtendMode mode = ExtendMode::kExact,
                                  SearchGoal goal = SearchGoal::kAll,
                                  SearchLimits limits = {});

struct MinimumSizeResult {
  bool infinite = false;        // no tight irreducible avsp exists at all
  int sigma = -1;               // exact value when conclusive
  int lower = -1, upper = -1;   // bracket when inconclusive
  bool inconclusive = false;
  std::optional<Avsp> witness;
};

// smallest size of a tight irreducible avsp of PG(n-1,q); trust_exclusions
// uses the built-in computational exclusion table instead of re-deriving
MinimumSizeResult minimum_size(int n, int q, bool trust_exclusions = true,
                               SearchLimits limits = {});

// candidate affine subspaces for search problems: dim-d subspaces of
// PG(n-1,q) not inside {x1=0}, in deterministic order
std::vector<Subspace> affine_flats(int n, int q, int dim);

struct CliqueCaseResult {
  long long cliques_enumerated = 0;
  std::vector<std::vector<Subspace>> octets;  // 8-plane configurations
  bool inconclusive = false;
};

// Enumerates the candidate plane octets for homogeneous solid partitions of
// PG(6,2): fixes one of the three seed triples (a), (b), (c), finds all
// 5-cliques of the pairwise-intersection-compatibility graph, and keeps the
// octets whose hyperplane incidences are even and spanning.
CliqueCaseResult clique_search_48(char seed_case, int threads = 1,
                                  long long clique_budget = -1,
                                  const std::string& checkpoint_path = "");

}  // namespace avsp
