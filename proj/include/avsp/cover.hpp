#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "avsp/bitset.hpp"

namespace avsp {

enum class SearchStatus { kComplete, kBudgetExceeded };

// Exact cover with exact per-group cardinalities and optional extras used by
// the avsp searches:
//   - groups: every solution uses exactly budget[g] candidates of group g
//     (budget -1 = unconstrained group)
//   - classes: at most one candidate per class id (ids < 0: unclassed)
//   - running intersection: optional bitset per candidate; a solution must
//     end with empty running AND (tightness)
// Candidates are iterated in index order, so solution order is deterministic.
class ExactCover {
public:
  ExactCover(int num_points, std::vector<Bitset> candidate_sets);

  void set_groups(std::vector<int> group, std::vector<long long> budget);
  void set_classes(std::vector<int> cls);
  void set_intersection_sets(std::vector<Bitset> full_sets);  // for tightness
  void require_empty_final_intersection(bool on) { tight_ = on; }
  void restrict_candidates(const Bitset& allowed);  // pre-kill others

  void set_node_budget(long long nodes) { node_budget_ = nodes; }

  // callback returns false to stop the search (e.g. first witness found)
  SearchStatus solve(const std::vector<int>& prefix,
                     const std::function<bool(const std::vector<int>&)>& on_solution);

  long long nodes_visited() const { return nodes_; }

private:
  bool descend(const std::function<bool(const std::vector<int>&)>& on_solution);
  void choose(int c);
  void unchoose_to(std::size_t depth);

  int num_points_;
  std::vector<Bitset> cand_;
  std::vector<Bitset> point_cands_;   // point -> candidates covering it
  std::vector<int> weight_;           // points per candidate
  std::vector<int> group_;
  std::vector<long long> budget_;
  std::vector<int> class_;
  std::vector<Bitset> group_mask_, class_mask_;
  std::vector<Bitset> inter_;
  bool tight_ = false;

  Bitset covered_;
  Bitset alive_;
  std::vector<int> chosen_;
  std::vector<Bitset> alive_stack_, inter_stack_;
  Bitset inter_now_;
  bool inter_valid_ = false;
  long long remaining_capacity_ = 0;  // sum over groups of budget*max-weight bound
  bool exact_capacity_ = false;
  std::vector<long long> group_weight_;  // uniform candidate weight per group, -1 if mixed

  long long node_budget_ = -1;
  long long nodes_ = 0;
  bool stopped_ = false;
};

}  // namespace avsp
