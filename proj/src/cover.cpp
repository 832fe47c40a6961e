#include "avsp/cover.hpp"

#include <algorithm>
#include <stdexcept>

namespace avsp {

ExactCover::ExactCover(int num_points, std::vector<Bitset> candidate_sets)
    : num_points_(num_points), cand_(std::move(candidate_sets)) {
  point_cands_.assign(num_points_, Bitset(cand_.size()));
  weight_.resize(cand_.size());
  for (std::size_t c = 0; c < cand_.size(); ++c) {
    weight_[c] = static_cast<int>(cand_[c].count());
    cand_[c].for_each([&](std::size_t p) { point_cands_[p].set(c); });
  }
  covered_ = Bitset(num_points_);
  alive_ = Bitset(cand_.size());
  for (std::size_t c = 0; c < cand_.size(); ++c) alive_.set(c);
  group_.assign(cand_.size(), 0);
  budget_ = {-1};
  group_mask_.assign(1, alive_);
  class_.assign(cand_.size(), -1);
}

void ExactCover::set_groups(std::vector<int> group, std::vector<long long> budget) {
  group_ = std::move(group);
  budget_ = std::move(budget);
  group_mask_.assign(budget_.size(), Bitset(cand_.size()));
  for (std::size_t c = 0; c < cand_.size(); ++c) group_mask_[group_[c]].set(c);
  // capacity bookkeeping only when every group is budgeted and has uniform
  // candidate weight
  exact_capacity_ = true;
  group_weight_.assign(budget_.size(), -1);
  for (std::size_t c = 0; c < cand_.size(); ++c) {
    long long& w = group_weight_[group_[c]];
    if (w == -1) w = weight_[c];
    else if (w != weight_[c]) exact_capacity_ = false;
  }
  remaining_capacity_ = 0;
  for (std::size_t g = 0; g < budget_.size(); ++g) {
    if (budget_[g] < 0) { exact_capacity_ = false; break; }
    if (group_weight_[g] == -1) group_weight_[g] = 0;
    remaining_capacity_ += budget_[g] * group_weight_[g];
  }
}

void ExactCover::set_classes(std::vector<int> cls) {
  class_ = std::move(cls);
  int maxc = -1;
  for (int c : class_) maxc = std::max(maxc, c);
  class_mask_.assign(maxc + 1, Bitset(cand_.size()));
  for (std::size_t c = 0; c < cand_.size(); ++c)
    if (class_[c] >= 0) class_mask_[class_[c]].set(c);
}

void ExactCover::set_intersection_sets(std::vector<Bitset> full_sets) {
  inter_ = std::move(full_sets);
}

void ExactCover::restrict_candidates(const Bitset& allowed) {
  alive_ &= allowed;
}

void ExactCover::choose(int c) {
  alive_stack_.push_back(alive_);
  if (tight_) inter_stack_.push_back(inter_now_);
  chosen_.push_back(c);

  covered_ |= cand_[c];
  // kill candidates clashing with the new coverage
  Bitset kill(cand_.size());
  cand_[c].for_each([&](std::size_t p) { kill |= point_cands_[p]; });
  alive_.and_not(kill);
  int g = group_[c];
  if (budget_[g] > 0 && --budget_[g] == 0) alive_.and_not(group_mask_[g]);
  if (exact_capacity_) remaining_capacity_ -= weight_[c];
  if (class_[c] >= 0) alive_.and_not(class_mask_[class_[c]]);
  if (tight_) {
    if (!inter_valid_) {
      inter_now_ = inter_[c];
      inter_valid_ = true;
    } else {
      inter_now_ &= inter_[c];
    }
  }
}

void ExactCover::unchoose_to(std::size_t depth) {
  while (chosen_.size() > depth) {
    int c = chosen_.back();
    chosen_.pop_back();
    covered_ ^= cand_[c];
    int g = group_[c];
    if (budget_[g] >= 0) ++budget_[g];
    if (exact_capacity_) remaining_capacity_ += weight_[c];
    alive_ = alive_stack_.back();
    alive_stack_.pop_back();
    if (tight_) {
      inter_now_ = inter_stack_.back();
      inter_stack_.pop_back();
      if (chosen_.empty()) inter_valid_ = false;
    }
  }
  if (chosen_.empty()) inter_valid_ = false;
}

SearchStatus ExactCover::solve(
    const std::vector<int>& prefix,
    const std::function<bool(const std::vector<int>&)>& on_solution) {
  nodes_ = 0;
  stopped_ = false;
  std::size_t base = chosen_.size();
  for (int c : prefix) {
    if (!alive_.test(c))
      throw std::invalid_argument("prefix candidate conflicts with problem state");
    choose(c);
  }
  descend(on_solution);
  unchoose_to(base);
  if (!stopped_ && node_budget_ >= 0 && nodes_ > node_budget_)
    return SearchStatus::kBudgetExceeded;
  return SearchStatus::kComplete;
}

bool ExactCover::descend(
    const std::function<bool(const std::vector<int>&)>& on_solution) {
  if (node_budget_ >= 0 && nodes_ > node_budget_) return false;
  ++nodes_;

  std::size_t covered_count = covered_.count();
  if (static_cast<int>(covered_count) == num_points_) {
    for (std::size_t g = 0; g < budget_.size(); ++g)
      if (budget_[g] > 0) return true;  // group quota unmet
    if (tight_ && inter_valid_ && inter_now_.any()) return true;
    if (!on_solution(chosen_)) { stopped_ = true; return false; }
    return true;
  }
  if (exact_capacity_ &&
      remaining_capacity_ != num_points_ - static_cast<long long>(covered_count))
    return true;

  // branch on the uncovered point with fewest live candidates
  int best_p = -1;
  std::size_t best_cnt = SIZE_MAX;
  for (int p = 0; p < num_points_; ++p) {
    if (covered_.test(p)) continue;
    std::size_t cnt = alive_.count_and(point_cands_[p]);
    if (cnt < best_cnt) {
      best_cnt = cnt;
      best_p = p;
      if (cnt == 0) return true;  // dead end
      if (cnt == 1) break;
    }
  }

  Bitset choices = alive_ & point_cands_[best_p];
  std::size_t depth = chosen_.size();
  bool keep_going = true;
  choices.for_each([&](std::size_t c) {
    if (!keep_going) return;
    if (node_budget_ >= 0 && nodes_ > node_budget_) { keep_going = false; return; }
    choose(static_cast<int>(c));
    keep_going = descend(on_solution);
    unchoose_to(depth);
  });
  return keep_going;
}

}  // namespace avsp
