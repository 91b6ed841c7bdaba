#pragma once

// Exact maximum triangle depth over the plane, computed independently of the
// selection pipeline: a slab sweep over the x-events of the (deduplicated)
// edge arrangement, stabbing the open triangle cross-sections on a probe
// line per slab. Depth is constant on arrangement faces and every face meets
// some probe line, so the sweep maximum is the true maximum.

#include "trisel/geometry.hpp"
#include "trisel/intervals.hpp"
#include "trisel/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace trisel {

struct DepthResult {
  Point2 point;
  std::size_t depth = 0;
  std::pair<Rational, Rational> slab;  // x-extent of the witnessing vertical slab
};

// Same contract as count_containing; the oracle-side name.
inline std::size_t depth_at(const Point2& p, const TriangleSet& t, const PointSet& s) {
  return count_containing(p, t, s);
}

namespace detail {

// Proper crossing of segment interiors (shared endpoints are vertex events
// and handled separately).
inline bool segments_cross(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const int d1 = orient_sign(a, b, c);
  const int d2 = orient_sign(a, b, d);
  const int d3 = orient_sign(c, d, a);
  const int d4 = orient_sign(c, d, b);
  return d1 * d2 < 0 && d3 * d4 < 0;
}

inline Rational crossing_x(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const Rational cross_ab = a.x * b.y - a.y * b.x;
  const Rational cross_cd = c.x * d.y - c.y * d.x;
  const Rational denom = (a.x - b.x) * (c.y - d.y) - (a.y - b.y) * (c.x - d.x);
  return (cross_ab * (c.x - d.x) - (a.x - b.x) * cross_cd) / denom;
}

}  // namespace detail

// Exact maximum open-interior depth with a witness point. Ties between
// equally deep candidates resolve to the lexicographically smallest (x, y).
//
// Inside a slab no two edges cross, so every active edge meets the probe
// line at a distinct y; each distinct edge is intersected once per slab and
// the triangle cross-sections are stabbed on integer ranks of those y's.
inline DepthResult exact_max_depth(const PointSet& s, const TriangleSet& t) {
  if (t.empty()) throw std::invalid_argument("no triangles");

  // Distinct edges spanned by the triangle set, each oriented left-right.
  std::map<std::pair<int, int>, int> edge_ids;
  std::vector<std::pair<int, int>> edges;
  const auto edge_of = [&](int u, int v) {
    if (!(s[u].x < s[v].x) && !(s[u].x == s[v].x && u < v)) std::swap(u, v);
    const auto [it, inserted] = edge_ids.try_emplace({u, v}, static_cast<int>(edges.size()));
    if (inserted) edges.push_back({u, v});
    return it->second;
  };

  // Per triangle: vertices sorted by (x, index) and the edge ids of
  // (left, mid), (mid, right), (left, right).
  struct TriangleInfo {
    int left, mid, right;
    int e_lm, e_mr, e_lr;
  };
  std::vector<TriangleInfo> infos;
  infos.reserve(t.size());
  for (const Triangle& tri : t) {
    std::array<int, 3> v = tri.v;
    std::sort(v.begin(), v.end(), [&s](int a, int b) {
      return s[a].x < s[b].x || (s[a].x == s[b].x && a < b);
    });
    infos.push_back({v[0], v[1], v[2], edge_of(v[0], v[1]), edge_of(v[1], v[2]),
                     edge_of(v[0], v[2])});
  }

  // x-events: every used vertex plus every proper edge crossing.
  std::vector<Rational> events;
  std::set<int> used;
  for (const Triangle& tri : t) used.insert(tri.v.begin(), tri.v.end());
  for (int idx : used) events.push_back(s[idx].x);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto [a, b] = edges[i];
      const auto [c, d] = edges[j];
      if (a == c || a == d || b == c || b == d) continue;
      if (detail::segments_cross(s[a], s[b], s[c], s[d]))
        events.push_back(detail::crossing_x(s[a], s[b], s[c], s[d]));
    }
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  const auto event_index = [&events](const Rational& x) {
    return static_cast<std::size_t>(
        std::lower_bound(events.begin(), events.end(), x) - events.begin());
  };

  // Activation sweeps: a triangle or edge is active in every slab strictly
  // inside its x-extent.
  const std::size_t slabs = events.empty() ? 0 : events.size() - 1;
  std::vector<std::vector<int>> tri_enter(slabs), tri_leave(slabs + 1), edge_enter(slabs),
      edge_leave(slabs + 1);
  for (std::size_t ti = 0; ti < infos.size(); ++ti) {
    const std::size_t from = event_index(s[infos[ti].left].x);
    const std::size_t to = event_index(s[infos[ti].right].x);
    if (from < to) {
      tri_enter[from].push_back(static_cast<int>(ti));
      tri_leave[to].push_back(static_cast<int>(ti));
    }
  }
  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    const std::size_t from = event_index(s[edges[ei].first].x);
    const std::size_t to = event_index(s[edges[ei].second].x);
    if (from < to) {
      edge_enter[from].push_back(static_cast<int>(ei));
      edge_leave[to].push_back(static_cast<int>(ei));
    }
  }

  std::vector<char> tri_active(infos.size(), 0), edge_active(edges.size(), 0);
  std::vector<Rational> edge_y(edges.size());
  std::vector<int> edge_rank(edges.size(), -1);
  std::vector<int> active_tris, active_edges, order;
  std::vector<int> gap_delta;
  DepthResult best;
  bool have_best = false;

  for (std::size_t k = 0; k < slabs; ++k) {
    for (int ti : tri_enter[k]) tri_active[static_cast<std::size_t>(ti)] = 1;
    for (int ti : tri_leave[k]) tri_active[static_cast<std::size_t>(ti)] = 0;
    for (int ei : edge_enter[k]) edge_active[static_cast<std::size_t>(ei)] = 1;
    for (int ei : edge_leave[k]) edge_active[static_cast<std::size_t>(ei)] = 0;

    active_tris.clear();
    active_edges.clear();
    for (std::size_t ti = 0; ti < infos.size(); ++ti)
      if (tri_active[ti]) active_tris.push_back(static_cast<int>(ti));
    if (active_tris.empty()) continue;
    for (std::size_t ei = 0; ei < edges.size(); ++ei)
      if (edge_active[ei]) active_edges.push_back(static_cast<int>(ei));

    const Rational probe_x = midpoint(events[k], events[k + 1]);
    for (int ei : active_edges) {
      const Point2& u = s[edges[static_cast<std::size_t>(ei)].first];
      const Point2& v = s[edges[static_cast<std::size_t>(ei)].second];
      edge_y[static_cast<std::size_t>(ei)] = u.y + (v.y - u.y) * (probe_x - u.x) / (v.x - u.x);
    }

    // Distinct y's (no two active edges cross inside a slab): rank them.
    order = active_edges;
    std::sort(order.begin(), order.end(), [&edge_y](int l, int r) {
      return edge_y[static_cast<std::size_t>(l)] < edge_y[static_cast<std::size_t>(r)];
    });
    for (std::size_t pos = 0; pos < order.size(); ++pos)
      edge_rank[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos);

    gap_delta.assign(order.size(), 0);
    for (int ti : active_tris) {
      const TriangleInfo& info = infos[static_cast<std::size_t>(ti)];
      // probe_x never equals a vertex x inside a slab.
      const bool left_of_mid = probe_x < s[info.mid].x;
      const int e1 = left_of_mid ? info.e_lm : info.e_mr;
      const int r1 = edge_rank[static_cast<std::size_t>(e1)];
      const int r2 = edge_rank[static_cast<std::size_t>(info.e_lr)];
      ++gap_delta[static_cast<std::size_t>(std::min(r1, r2))];
      --gap_delta[static_cast<std::size_t>(std::max(r1, r2))];
    }

    int running = 0, slab_best = 0, slab_gap = -1;
    for (std::size_t g = 0; g + 1 < order.size(); ++g) {
      running += gap_delta[g];
      if (running > slab_best) {
        slab_best = running;
        slab_gap = static_cast<int>(g);
      }
    }
    if (slab_gap < 0) continue;

    const std::size_t depth = static_cast<std::size_t>(slab_best);
    if (have_best && depth < best.depth) continue;
    const Point2 candidate{
        probe_x, midpoint(edge_y[static_cast<std::size_t>(order[static_cast<std::size_t>(slab_gap)])],
                          edge_y[static_cast<std::size_t>(order[static_cast<std::size_t>(slab_gap) + 1])])};
    if (!have_best || depth > best.depth || candidate < best.point) {
      best.point = candidate;
      best.depth = depth;
      best.slab = {events[k], events[k + 1]};
      have_best = true;
    }
  }
  if (!have_best) throw std::logic_error("no slab produced a cross-section");
  return best;
}

// Guarantee-free baseline: best depth over all triangle centroids.
inline DepthResult heuristic_baseline(const PointSet& s, const TriangleSet& t) {
  if (t.empty()) throw std::invalid_argument("no triangles");
  const ContainmentCounter counter(s, t);
  DepthResult best;
  bool have_best = false;
  for (const Triangle& tri : t) {
    const Point2& a = s[tri.v[0]];
    const Point2& b = s[tri.v[1]];
    const Point2& c = s[tri.v[2]];
    const Point2 centroid{(a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3};
    const std::size_t depth = counter.count(centroid);
    if (!have_best || depth > best.depth || (depth == best.depth && centroid < best.point)) {
      best.point = centroid;
      best.depth = depth;
      best.slab = {centroid.x, centroid.x};
      have_best = true;
    }
  }
  return best;
}

}  // namespace trisel
