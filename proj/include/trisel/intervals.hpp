#pragma once

// One-dimensional selection machinery: maximum open-interval stabbing by
// endpoint sweep, and the balanced-decomposition weighted selection that
// picks a dense sub-multiset sharing a common interior point.
//
// Open-interval semantics throughout: a point stabs (lo, hi) only if
// lo < point < hi, and returned points are gap midpoints, never endpoint
// values.

#include "trisel/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace trisel {

template <class Witness>
struct Interval1 {
  Rational lo;
  Rational hi;
  Witness witness;
};

template <class Witness>
class IntervalMultiset {
 public:
  void add(Rational lo, Rational hi, Witness witness) {
    if (!(lo < hi)) throw std::invalid_argument("interval must satisfy lo < hi");
    items_.push_back({std::move(lo), std::move(hi), std::move(witness)});
  }

  const std::vector<Interval1<Witness>>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  // Distinct endpoint values V, sorted ascending.
  std::vector<Rational> endpoint_set() const {
    std::vector<Rational> values;
    values.reserve(2 * items_.size());
    for (const auto& it : items_) {
      values.push_back(it.lo);
      values.push_back(it.hi);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
  }

 private:
  std::vector<Interval1<Witness>> items_;
};

template <class Witness>
struct StabbingResult {
  Rational point;
  std::size_t depth = 0;
  std::vector<Witness> covering;
};

namespace detail {

// Endpoint compression: distinct values in sorted order plus per-item
// (lo, hi) indices. One ordered-map pass keeps the number of rational
// comparisons at O(m log |V|); everything downstream works on integers.
struct CompressedEndpoints {
  std::vector<Rational> values;
  std::vector<std::pair<int, int>> item_ids;
};

template <class Witness>
CompressedEndpoints compress_endpoints(const std::vector<Interval1<Witness>>& items) {
  std::map<Rational, int> ids;
  std::vector<std::pair<std::map<Rational, int>::iterator, std::map<Rational, int>::iterator>>
      item_iters;
  item_iters.reserve(items.size());
  for (const auto& item : items)
    item_iters.push_back(
        {ids.emplace(item.lo, 0).first, ids.emplace(item.hi, 0).first});

  CompressedEndpoints out;
  out.values.reserve(ids.size());
  for (auto& [value, id] : ids) {
    id = static_cast<int>(out.values.size());
    out.values.push_back(value);
  }
  out.item_ids.reserve(items.size());
  for (const auto& [lo_it, hi_it] : item_iters)
    out.item_ids.push_back({lo_it->second, hi_it->second});
  return out;
}

}  // namespace detail

// Globally deepest point among open intervals, found by sweeping the sorted
// distinct endpoints. The point is the midpoint of the deepest gap; ties go
// to the leftmost gap.
template <class Witness>
StabbingResult<Witness> max_stabbing(const IntervalMultiset<Witness>& e) {
  if (e.empty()) throw std::invalid_argument("no intervals");
  const detail::CompressedEndpoints comp = detail::compress_endpoints(e.items());

  // opens[k]: intervals starting at values[k]; closes[k]: ending there.
  std::vector<std::size_t> opens(comp.values.size(), 0), closes(comp.values.size(), 0);
  for (const auto& [lo_id, hi_id] : comp.item_ids) {
    ++opens[static_cast<std::size_t>(lo_id)];
    ++closes[static_cast<std::size_t>(hi_id)];
  }

  std::size_t running = 0, best_depth = 0;
  int best_gap = 0;
  for (std::size_t k = 0; k + 1 < comp.values.size(); ++k) {
    running += opens[k];
    running -= closes[k];
    if (running > best_depth) {
      best_depth = running;
      best_gap = static_cast<int>(k);
    }
  }

  StabbingResult<Witness> result;
  result.point = midpoint(comp.values[static_cast<std::size_t>(best_gap)],
                          comp.values[static_cast<std::size_t>(best_gap) + 1]);
  for (std::size_t i = 0; i < e.items().size(); ++i)
    if (comp.item_ids[i].first <= best_gap && best_gap < comp.item_ids[i].second)
      result.covering.push_back(e.items()[i].witness);
  result.depth = result.covering.size();
  if (result.depth != best_depth)
    throw std::logic_error("stabbing sweep disagrees with direct recount");
  return result;
}

// Calibrated unweighted-selection lower bound for m distinct intervals over
// n distinct endpoints: ceil(m^2 / (4 n^2)). Validated exhaustively for all
// interval subsets over up to six collinear points (see the test suite).
inline BigInt unweighted_depth_bound(std::size_t m, std::size_t n) {
  if (n == 0) return 0;
  return ceil_div(BigInt(m) * BigInt(m), 4 * BigInt(n) * BigInt(n));
}

// Balanced binary decomposition over sorted distinct endpoint values.
// A node over endpoint index range [lo, hi] with hi > lo splits after the
// first ceil(len/2) endpoints; its split gap is (V[s], V[s+1]). Size-one
// ranges are leaves: no split gap, never assigned intervals.
class EndpointTree {
 public:
  struct Node {
    int lo = 0, hi = 0;        // inclusive endpoint index range
    int split = -1;            // gap between values[split], values[split+1]; -1 for leaf
    int level = 0;             // root is level 1
    int left = -1, right = -1;
  };

  explicit EndpointTree(std::vector<Rational> sorted_distinct_values)
      : values_(std::move(sorted_distinct_values)) {
    if (values_.empty()) throw std::invalid_argument("endpoint tree needs at least one value");
    std::deque<std::pair<int, std::pair<int, int>>> queue;  // (node id, range)
    nodes_.push_back({});
    queue.push_back({0, {0, static_cast<int>(values_.size()) - 1}});
    nodes_[0].level = 1;
    while (!queue.empty()) {
      const auto [id, range] = queue.front();
      queue.pop_front();
      nodes_[id].lo = range.first;
      nodes_[id].hi = range.second;
      const int len = range.second - range.first + 1;
      if (len < 2) continue;
      const int split = range.first + (len + 1) / 2 - 1;
      const int level = nodes_[id].level;
      nodes_[id].split = split;
      levels_ = std::max(levels_, level);
      const int left_id = static_cast<int>(nodes_.size());
      nodes_.push_back({});
      nodes_.back().level = level + 1;
      const int right_id = static_cast<int>(nodes_.size());
      nodes_.push_back({});
      nodes_.back().level = level + 1;
      nodes_[id].left = left_id;
      nodes_[id].right = right_id;
      queue.push_back({left_id, {range.first, split}});
      queue.push_back({right_id, {split + 1, range.second}});
    }
  }

  // Highest node whose split gap lies inside (lo, hi). Endpoints must be
  // tree values; the gap's open interior is then strictly inside (lo, hi).
  int assign(const Rational& lo, const Rational& hi) const {
    if (!(lo < hi)) throw std::invalid_argument("interval must satisfy lo < hi");
    const int lo_idx = index_of(lo);
    const int hi_idx = index_of(hi);
    if (lo_idx < 0 || hi_idx < 0)
      throw std::invalid_argument("interval endpoints must belong to the tree's endpoint set");
    return assign_indices(lo_idx, hi_idx);
  }

  // Same descent on endpoint indices into values().
  int assign_indices(int lo_idx, int hi_idx) const {
    if (!(0 <= lo_idx && lo_idx < hi_idx && hi_idx < static_cast<int>(values_.size())))
      throw std::invalid_argument("endpoint indices out of order");
    int id = 0;
    for (;;) {
      const Node& node = nodes_[static_cast<std::size_t>(id)];
      if (node.split < 0) throw std::logic_error("descent reached a leaf without a matching gap");
      if (lo_idx <= node.split && node.split + 1 <= hi_idx) return id;
      id = hi_idx <= node.split ? node.left : node.right;
    }
  }

  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  std::size_t node_count() const { return nodes_.size(); }
  // Number of levels that contain split nodes; equals ceil(log2 |V|).
  int levels() const { return levels_; }
  const std::vector<Rational>& values() const { return values_; }

  std::pair<Rational, Rational> split_gap(int id) const {
    const Node& n = node(id);
    if (n.split < 0) throw std::invalid_argument("leaf node has no split gap");
    return {values_[n.split], values_[n.split + 1]};
  }

 private:
  int index_of(const Rational& v) const {
    const auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it == values_.end() || *it != v) return -1;
    return static_cast<int>(it - values_.begin());
  }

  std::vector<Rational> values_;
  std::vector<Node> nodes_;
  int levels_ = 0;
};

template <class Witness>
int assign_canonical_node(const Interval1<Witness>& interval, const EndpointTree& tree) {
  return tree.assign(interval.lo, interval.hi);
}

template <class Witness>
struct WeightedSelection {
  std::vector<Interval1<Witness>> selected;  // the sub-multiset E'
  Rational common_point;                     // strictly inside every selected interval
  std::size_t m_prime = 0;                   // |E'|
  std::size_t n_prime = 0;                   // distinct endpoints of E'
  int levels_used = 0;
  Rational gap_lo, gap_hi;                   // split gap of the winning node
  int node_id = -1;
};

// Weighted selection: assign every interval to its canonical node, then take
// the node maximizing m_v / n_v (ties: larger m_v, then smaller node id).
// Guarantees m'/n' >= m/(n*L) with L = levels_used <= floor(log2 |V|) + 1.
template <class Witness>
WeightedSelection<Witness> weighted_select(const IntervalMultiset<Witness>& e) {
  if (e.empty()) throw std::invalid_argument("no intervals");
  const detail::CompressedEndpoints comp = detail::compress_endpoints(e.items());
  const EndpointTree tree(comp.values);

  std::vector<std::vector<std::size_t>> assigned(tree.node_count());
  const auto& items = e.items();
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto [lo_id, hi_id] = comp.item_ids[i];
    assigned[static_cast<std::size_t>(tree.assign_indices(lo_id, hi_id))].push_back(i);
  }

  const auto distinct_endpoints = [&comp](const std::vector<std::size_t>& ids) {
    std::vector<int> vals;
    vals.reserve(2 * ids.size());
    for (std::size_t i : ids) {
      vals.push_back(comp.item_ids[i].first);
      vals.push_back(comp.item_ids[i].second);
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals.size();
  };

  int best = -1;
  std::size_t best_m = 0, best_n = 1;
  for (std::size_t id = 0; id < tree.node_count(); ++id) {
    if (assigned[id].empty()) continue;
    const std::size_t m_v = assigned[id].size();
    const std::size_t n_v = distinct_endpoints(assigned[id]);
    // m_v/n_v > best_m/best_n, cross-multiplied.
    const bool better = best < 0 || m_v * best_n > best_m * n_v ||
                        (m_v * best_n == best_m * n_v && m_v > best_m);
    if (better) {
      best = static_cast<int>(id);
      best_m = m_v;
      best_n = n_v;
    }
  }

  WeightedSelection<Witness> out;
  out.node_id = best;
  out.m_prime = best_m;
  out.n_prime = best_n;
  out.levels_used = tree.levels();
  std::tie(out.gap_lo, out.gap_hi) = tree.split_gap(best);
  out.common_point = midpoint(out.gap_lo, out.gap_hi);
  out.selected.reserve(best_m);
  for (std::size_t i : assigned[static_cast<std::size_t>(best)]) out.selected.push_back(items[i]);

  // Constructive guarantee, checked on every call: m'/n' >= m/(n*L).
  const BigInt lhs = BigInt(out.m_prime) * BigInt(comp.values.size()) * out.levels_used;
  const BigInt rhs = BigInt(e.size()) * BigInt(out.n_prime);
  if (lhs < rhs) throw std::logic_error("weighted selection guarantee violated");
  for (const auto& it : out.selected)
    if (!(it.lo < out.common_point && out.common_point < it.hi))
      throw std::logic_error("selected interval does not contain the common point");
  return out;
}

}  // namespace trisel
