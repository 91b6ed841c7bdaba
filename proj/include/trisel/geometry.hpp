#pragma once

// Exact planar primitives: points, index triangles, orientation and
// containment predicates, the x-shear that makes x-coordinates pairwise
// distinct, and general-position validation. Everything is a pure function
// over immutable values.

#include "trisel/rational.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trisel {

enum class Orientation { CW = -1, Collinear = 0, CCW = 1 };

struct Point2 {
  Rational x;
  Rational y;

  friend bool operator==(const Point2& a, const Point2& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator<(const Point2& a, const Point2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

struct PointSet {
  std::vector<Point2> points;
  std::string label;

  std::size_t size() const { return points.size(); }
  const Point2& operator[](std::size_t i) const { return points[i]; }
};

// Index triple into a PointSet, stored sorted ascending.
struct Triangle {
  std::array<int, 3> v{};

  Triangle() = default;
  Triangle(int a, int b, int c) : v{a, b, c} {
    std::sort(v.begin(), v.end());
    if (v[0] == v[1] || v[1] == v[2])
      throw std::invalid_argument("triangle requires three distinct vertex indices");
  }

  friend bool operator==(const Triangle& a, const Triangle& b) { return a.v == b.v; }
  friend bool operator<(const Triangle& a, const Triangle& b) { return a.v < b.v; }
};

using TriangleSet = std::vector<Triangle>;

struct Segment2 {
  Point2 p;
  Point2 q;

  Segment2(Point2 p_, Point2 q_) : p(std::move(p_)), q(std::move(q_)) {
    if (p == q) throw std::invalid_argument("degenerate segment: endpoints coincide");
  }
};

// Sign of det[q-p, r-p]. Works on numerator/denominator pairs so no
// intermediate value is renormalized; all denominators are positive.
inline int orient_sign(const Point2& p, const Point2& q, const Point2& r) {
  const BigInt n1 = rational_num(q.x) * rational_den(p.x) - rational_num(p.x) * rational_den(q.x);
  const BigInt d1 = rational_den(q.x) * rational_den(p.x);
  const BigInt n2 = rational_num(r.y) * rational_den(p.y) - rational_num(p.y) * rational_den(r.y);
  const BigInt d2 = rational_den(r.y) * rational_den(p.y);
  const BigInt n3 = rational_num(q.y) * rational_den(p.y) - rational_num(p.y) * rational_den(q.y);
  const BigInt d3 = rational_den(q.y) * rational_den(p.y);
  const BigInt n4 = rational_num(r.x) * rational_den(p.x) - rational_num(p.x) * rational_den(r.x);
  const BigInt d4 = rational_den(r.x) * rational_den(p.x);
  const BigInt lhs = n1 * n2 * d3 * d4;
  const BigInt rhs = n3 * n4 * d1 * d2;
  return lhs.compare(rhs);
}

inline Orientation orient(const Point2& p, const Point2& q, const Point2& r) {
  const int s = orient_sign(p, q, r);
  return s > 0 ? Orientation::CCW : (s < 0 ? Orientation::CW : Orientation::Collinear);
}

// Strict interior containment; boundary points are out.
inline bool point_in_triangle_interior(const Point2& pt, const Triangle& t, const PointSet& s) {
  const int s1 = orient_sign(s[t.v[0]], s[t.v[1]], pt);
  const int s2 = orient_sign(s[t.v[1]], s[t.v[2]], pt);
  const int s3 = orient_sign(s[t.v[2]], s[t.v[0]], pt);
  return s1 != 0 && s1 == s2 && s2 == s3;
}

// Closed containment (interior or boundary).
inline bool point_in_triangle_closed(const Point2& pt, const Triangle& t, const PointSet& s) {
  const int s1 = orient_sign(s[t.v[0]], s[t.v[1]], pt);
  const int s2 = orient_sign(s[t.v[1]], s[t.v[2]], pt);
  const int s3 = orient_sign(s[t.v[2]], s[t.v[0]], pt);
  return (s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0);
}

inline Rational x_projection_length(const Segment2& s) {
  return abs(s.q.x - s.p.x);
}

// Exact y where s crosses the vertical line x = x0; requires a strict
// crossing (x0 strictly between the segment's x-extremes).
inline Rational vertical_line_intersection(const Segment2& s, const Rational& x0) {
  const Rational& lo = s.p.x < s.q.x ? s.p.x : s.q.x;
  const Rational& hi = s.p.x < s.q.x ? s.q.x : s.p.x;
  if (!(lo < x0 && x0 < hi))
    throw std::invalid_argument("line does not cross segment strictly");
  return s.p.y + (s.q.y - s.p.y) * (x0 - s.p.x) / (s.q.x - s.p.x);
}

struct GeneralPositionReport {
  std::vector<std::pair<int, int>> duplicate_points;
  std::vector<std::array<int, 3>> collinear_triples;
  std::vector<std::pair<int, int>> duplicate_x;

  bool clean() const {
    return duplicate_points.empty() && collinear_triples.empty() && duplicate_x.empty();
  }
};

inline GeneralPositionReport validate_general_position(const PointSet& s) {
  GeneralPositionReport report;
  const int n = static_cast<int>(s.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (s[i] == s[j]) report.duplicate_points.emplace_back(i, j);
      if (s[i].x == s[j].x) report.duplicate_x.emplace_back(i, j);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (orient_sign(s[i], s[j], s[k]) == 0)
          report.collinear_triples.push_back({i, j, k});
  return report;
}

// x' = x + eps*y, y' = y with eps strictly below every positive critical
// ratio (x_j - x_i)/(y_i - y_j), so no two sheared x-coordinates coincide.
// The map is affine: collinearity, containment and depth are preserved.
inline std::pair<PointSet, Rational> shear_to_distinct_x(const PointSet& s) {
  const int n = static_cast<int>(s.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (s[i] == s[j]) throw std::invalid_argument("duplicate point");

  bool have_ratio = false;
  Rational min_ratio;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (s[i].y == s[j].y) continue;
      const Rational ratio = (s[j].x - s[i].x) / (s[i].y - s[j].y);
      if (ratio > 0 && (!have_ratio || ratio < min_ratio)) {
        min_ratio = ratio;
        have_ratio = true;
      }
    }
  }
  const Rational eps = have_ratio ? min_ratio / 2 : Rational(1);

  PointSet out;
  out.label = s.label;
  out.points.reserve(s.size());
  for (const Point2& p : s.points) out.points.push_back({p.x + eps * p.y, p.y});
  return {std::move(out), eps};
}

inline Point2 unshear_point(const Point2& sheared, const Rational& eps) {
  return {sheared.x - eps * sheared.y, sheared.y};
}

// Counts triangles whose open interior contains a query point. Prebuilds
// bounding boxes so batched probing stays cheap.
class ContainmentCounter {
 public:
  ContainmentCounter(const PointSet& s, const TriangleSet& t) : points_(&s) {
    entries_.reserve(t.size());
    for (const Triangle& tri : t) {
      Entry e;
      e.tri = tri;
      const Point2& a = s[tri.v[0]];
      const Point2& b = s[tri.v[1]];
      const Point2& c = s[tri.v[2]];
      e.min_x = std::min({a.x, b.x, c.x});
      e.max_x = std::max({a.x, b.x, c.x});
      e.min_y = std::min({a.y, b.y, c.y});
      e.max_y = std::max({a.y, b.y, c.y});
      entries_.push_back(std::move(e));
    }
  }

  std::size_t count(const Point2& p) const {
    std::size_t depth = 0;
    for (const Entry& e : entries_) {
      if (!(e.min_x < p.x && p.x < e.max_x && e.min_y < p.y && p.y < e.max_y)) continue;
      if (point_in_triangle_interior(p, e.tri, *points_)) ++depth;
    }
    return depth;
  }

 private:
  struct Entry {
    Triangle tri;
    Rational min_x, max_x, min_y, max_y;
  };
  const PointSet* points_;
  std::vector<Entry> entries_;
};

inline std::size_t count_containing(const Point2& p, const TriangleSet& t, const PointSet& s) {
  return ContainmentCounter(s, t).count(p);
}

}  // namespace trisel
