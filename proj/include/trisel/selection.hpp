#pragma once

// The triangle-selection pipeline: group triangles by base (the edge with
// the longest x-projection), discard sparse bases, bucket the rest by load
// level, pair triangles over a common base, select a dense sub-multiset of
// apex-pair x-projections sharing a point z0, lift the pairs to vertical
// segments on the line x = z0, and stab those segments to produce a witness
// point x0 that is deep in the selected triangles. Every counting inequality
// along the way is recorded in a machine-checkable certificate.

#include "trisel/geometry.hpp"
#include "trisel/intervals.hpp"
#include "trisel/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace trisel {

// Triangles sharing the base (a, b); a is the left endpoint (a.x < b.x).
// Every apex x-coordinate is strictly inside (a.x, b.x).
struct BaseGroup {
  int a = 0;
  int b = 0;
  std::vector<int> apexes;  // sorted by apex x-coordinate

  std::size_t m_ab() const { return apexes.size(); }
};

struct LevelBucket {
  int j = 0;
  std::vector<BaseGroup> bases;
  std::size_t m_j = 0;
};

// Originating quadruple of a projected/lifted pair: base (a, b) with
// a.x < b.x, apexes (c, d) with c.x < d.x.
struct PairWitness {
  int a = 0, b = 0, c = 0, d = 0;

  friend bool operator==(const PairWitness& l, const PairWitness& r) {
    return l.a == r.a && l.b == r.b && l.c == r.c && l.d == r.d;
  }
  friend bool operator<(const PairWitness& l, const PairWitness& r) {
    return std::tie(l.a, l.b, l.c, l.d) < std::tie(r.a, r.b, r.c, r.d);
  }
};

// Vertical segment along x = z0 covered by the union of triangles abc, abd.
struct LiftedSegment {
  Rational x;
  Rational y_lo;
  Rational y_hi;
  PairWitness witness;
};

struct ChainCheck {
  std::string name;
  Rational lhs;
  std::string op;  // "<", "<=", ">=" or "=="
  Rational rhs;
  bool pass = false;

  bool evaluate() const {
    if (op == "<") return lhs < rhs;
    if (op == "<=") return lhs <= rhs;
    if (op == ">=") return lhs >= rhs;
    if (op == "==") return lhs == rhs;
    throw std::invalid_argument("unknown chain-check relation '" + op + "'");
  }

  friend bool operator==(const ChainCheck& l, const ChainCheck& r) {
    return l.name == r.name && l.lhs == r.lhs && l.op == r.op && l.rhs == r.rhs &&
           l.pass == r.pass;
  }
};

struct SelectionCertificate {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t m_discarded = 0;
  int j_star = 0;
  std::size_t m_j = 0;
  std::size_t M0_size = 0;
  std::size_t n0 = 0;  // distinct endpoints of M0
  std::size_t M1_size = 0;
  std::size_t n1 = 0;  // distinct endpoints of M1
  std::size_t M2_size = 0;
  std::size_t n2 = 0;  // distinct endpoints of M2
  int levels_used = 0;
  std::size_t z0_retries = 0;
  Rational shear_eps;
  Rational z0;  // sheared frame
  Point2 x0;    // original frame
  std::size_t depth_pairs = 0;
  std::size_t depth_triangles = 0;
  Rational bound_rhs;  // m^3 / (n^6 * ceil(log2 n)^2), recorded not asserted
  std::vector<ChainCheck> chain_checks;

  bool all_checks_pass() const {
    for (const auto& c : chain_checks)
      if (!c.pass) return false;
    return true;
  }

  const ChainCheck* first_failure() const {
    for (const auto& c : chain_checks)
      if (!c.pass) return &c;
    return nullptr;
  }

  friend bool operator==(const SelectionCertificate& l, const SelectionCertificate& r) {
    return l.n == r.n && l.m == r.m && l.m_discarded == r.m_discarded && l.j_star == r.j_star &&
           l.m_j == r.m_j && l.M0_size == r.M0_size && l.n0 == r.n0 && l.M1_size == r.M1_size &&
           l.n1 == r.n1 && l.M2_size == r.M2_size && l.n2 == r.n2 &&
           l.levels_used == r.levels_used && l.z0_retries == r.z0_retries &&
           l.shear_eps == r.shear_eps && l.z0 == r.z0 && l.x0 == r.x0 &&
           l.depth_pairs == r.depth_pairs && l.depth_triangles == r.depth_triangles &&
           l.bound_rhs == r.bound_rhs && l.chain_checks == r.chain_checks;
  }
};

// Base of a triangle: the edge with the longest x-projection; ties break to
// the lexicographically smallest (left index, right index). With pairwise
// distinct x-coordinates the base is the (min-x, max-x) edge and ties never
// occur, but the tie-break keeps the rule total.
inline std::vector<BaseGroup> assign_bases(const PointSet& s, const TriangleSet& t) {
  const int n = static_cast<int>(s.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (s[i].x == s[j].x)
        throw std::invalid_argument("assign_bases requires pairwise distinct x-coordinates");

  std::map<std::pair<int, int>, std::vector<int>> groups;
  for (const Triangle& tri : t) {
    std::pair<int, int> base{-1, -1};
    int apex = -1;
    Rational best_len{-1};
    for (int e = 0; e < 3; ++e) {
      int u = tri.v[e];
      int v = tri.v[(e + 1) % 3];
      const int w = tri.v[(e + 2) % 3];
      if (s[v].x < s[u].x) std::swap(u, v);
      const Rational len = s[v].x - s[u].x;
      const std::pair<int, int> edge{u, v};
      if (len > best_len || (len == best_len && edge < base)) {
        best_len = len;
        base = edge;
        apex = w;
      }
    }
    groups[base].push_back(apex);
  }

  std::vector<BaseGroup> out;
  out.reserve(groups.size());
  for (auto& [base, apexes] : groups) {
    std::sort(apexes.begin(), apexes.end(),
              [&s](int l, int r) { return s[l].x < s[r].x; });
    out.push_back({base.first, base.second, std::move(apexes)});
  }
  return out;
}

// Discard every group with m_ab < m/n^2. At most C(n,2) * m/n^2 < m/2
// triangles are lost.
inline std::pair<std::vector<BaseGroup>, std::size_t> prune_sparse_bases(
    std::vector<BaseGroup> groups, std::size_t m, std::size_t n) {
  const BigInt n_sq = BigInt(n) * BigInt(n);
  std::vector<BaseGroup> kept;
  kept.reserve(groups.size());
  std::size_t discarded = 0;
  for (auto& g : groups) {
    if (BigInt(g.m_ab()) * n_sq < BigInt(m))
      discarded += g.m_ab();
    else
      kept.push_back(std::move(g));
  }
  return {std::move(kept), discarded};
}

// Level of a surviving group: the unique j >= 1 with
// 4^(j-1) * m / n^2 <= m_ab < 4^j * m / n^2, by exact integer comparison.
inline int bucket_level(std::size_t m_ab, std::size_t m, std::size_t n) {
  const BigInt scaled = BigInt(m_ab) * BigInt(n) * BigInt(n);
  if (scaled < BigInt(m))
    throw std::invalid_argument("bucket_level requires m_ab >= m/n^2 (prune first)");
  int j = 1;
  while (scaled >= pow_int(4, static_cast<unsigned>(j)) * BigInt(m)) ++j;
  return j;
}

inline std::map<int, LevelBucket> bucket_bases(const std::vector<BaseGroup>& groups,
                                               std::size_t m, std::size_t n) {
  if (BigInt(m) > pow_int(BigInt(n), 3)) throw std::runtime_error("bucket range empty");
  std::map<int, LevelBucket> buckets;
  for (const auto& g : groups) {
    const int j = bucket_level(g.m_ab(), m, n);
    auto& bucket = buckets[j];
    bucket.j = j;
    bucket.bases.push_back(g);
    bucket.m_j += g.m_ab();
  }
  return buckets;
}

// Level with the largest slack 2^(j+1) * m_j; ties go to the smallest j.
// The winner satisfies m_j >= 2^-(j+1) * m whenever the prune guarantee
// holds; that inequality is recorded as chain check C3.
inline int choose_level(const std::map<int, LevelBucket>& buckets, std::size_t m) {
  (void)m;
  if (buckets.empty()) throw std::invalid_argument("no buckets");
  int best_j = 0;
  BigInt best_slack = -1;
  for (const auto& [j, bucket] : buckets) {
    const BigInt slack = (BigInt(1) << static_cast<unsigned>(j + 1)) * BigInt(bucket.m_j);
    if (slack > best_slack) {
      best_slack = slack;
      best_j = j;
    }
  }
  return best_j;
}

// One open interval (c.x, d.x) per unordered apex pair {c, d} over a common
// base; the multiset size is sum over bases of C(m_ab, 2).
inline IntervalMultiset<PairWitness> build_projected_pairs(const LevelBucket& bucket,
                                                           const PointSet& s) {
  IntervalMultiset<PairWitness> m0;
  for (const BaseGroup& g : bucket.bases) {
    for (std::size_t i = 0; i < g.apexes.size(); ++i) {
      for (std::size_t k = i + 1; k < g.apexes.size(); ++k) {
        const int c = g.apexes[i];
        const int d = g.apexes[k];  // apexes sorted by x, so c.x < d.x
        m0.add(s[c].x, s[d].x, PairWitness{g.a, g.b, c, d});
      }
    }
  }
  return m0;
}

struct LiftOutcome {
  std::vector<LiftedSegment> segments;
  std::size_t degenerate_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

// For each selected pair, intersect ad and bc with the vertical line
// x = z0; the segment between the two crossings lies in the union of the
// triangles abc, abd. Zero-length lifts are dropped, identical (y_lo, y_hi)
// pairs are deduplicated keeping the smallest witness.
inline LiftOutcome lift_to_vertical(const std::vector<Interval1<PairWitness>>& selected,
                                    const Rational& z0, const PointSet& s) {
  for (const Point2& p : s.points)
    if (p.x == z0) throw std::invalid_argument("z0 not in general position");

  LiftOutcome out;
  out.segments.reserve(selected.size());
  for (const auto& item : selected) {
    const PairWitness& w = item.witness;
    if (!(s[w.a].x < z0 && z0 < s[w.b].x && s[w.c].x < z0 && z0 < s[w.d].x))
      throw std::logic_error("selected interval does not straddle z0 as oriented");
    const Rational p_y = vertical_line_intersection(Segment2(s[w.a], s[w.d]), z0);
    const Rational q_y = vertical_line_intersection(Segment2(s[w.b], s[w.c]), z0);
    if (p_y == q_y) {
      ++out.degenerate_dropped;
      continue;
    }
    out.segments.push_back(
        {z0, std::min(p_y, q_y), std::max(p_y, q_y), w});
  }

  std::sort(out.segments.begin(), out.segments.end(),
            [](const LiftedSegment& l, const LiftedSegment& r) {
              if (l.y_lo != r.y_lo) return l.y_lo < r.y_lo;
              if (l.y_hi != r.y_hi) return l.y_hi < r.y_hi;
              return l.witness < r.witness;
            });
  auto last = std::unique(out.segments.begin(), out.segments.end(),
                          [](const LiftedSegment& l, const LiftedSegment& r) {
                            return l.y_lo == r.y_lo && l.y_hi == r.y_hi;
                          });
  out.duplicates_dropped = static_cast<std::size_t>(out.segments.end() - last);
  out.segments.erase(last, out.segments.end());
  return out;
}

namespace detail {

inline bool point_on_triangle_boundary(const Point2& p, const Triangle& t, const PointSet& s) {
  return point_in_triangle_closed(p, t, s) && !point_in_triangle_interior(p, t, s);
}

// Interior samples at 1/4, 1/2, 3/4 of each lifted segment must lie in the
// closed union of the witness triangles abc and abd.
inline std::size_t count_union_violations(const std::vector<LiftedSegment>& segments,
                                          const PointSet& s) {
  std::size_t violations = 0;
  for (const LiftedSegment& seg : segments) {
    const Triangle abc(seg.witness.a, seg.witness.b, seg.witness.c);
    const Triangle abd(seg.witness.a, seg.witness.b, seg.witness.d);
    for (int num = 1; num <= 3; ++num) {
      const Point2 sample{seg.x, seg.y_lo + (seg.y_hi - seg.y_lo) * num / 4};
      if (!point_in_triangle_closed(sample, abc, s) && !point_in_triangle_closed(sample, abd, s))
        ++violations;
    }
  }
  return violations;
}

}  // namespace detail

inline void validate_instance(const PointSet& s, const TriangleSet& t) {
  const int n = static_cast<int>(s.size());
  for (const Triangle& tri : t)
    for (int idx : tri.v)
      if (idx < 0 || idx >= n) throw std::invalid_argument("triangle index out of range");
  TriangleSet sorted = t;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate triangle");
  // Duplicate x-coordinates are tolerated here: the shear removes them.
  const GeneralPositionReport report = validate_general_position(s);
  if (!report.duplicate_points.empty() || !report.collinear_triples.empty())
    throw std::invalid_argument("general position violated");
}

inline std::size_t count_distinct_y_endpoints(const std::vector<LiftedSegment>& segments) {
  std::vector<Rational> ys;
  ys.reserve(2 * segments.size());
  for (const auto& seg : segments) {
    ys.push_back(seg.y_lo);
    ys.push_back(seg.y_hi);
  }
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  return ys.size();
}

// End-to-end pipeline. Deterministic given the input and the documented
// tie-breaks; z0 degeneracies (zero-length or duplicate lifts, z0 on a point
// x-coordinate, or the witness point landing on a triangle edge) trigger up
// to 32 dyadic retries that shrink the z0 gap leftwards.
inline SelectionCertificate run_selection(const PointSet& s, const TriangleSet& t) {
  const std::size_t n = s.size();
  const std::size_t m = t.size();
  if (n < 4 || m < 2) throw std::invalid_argument("instance too small");
  validate_instance(s, t);

  auto [sheared, eps] = shear_to_distinct_x(s);

  const std::vector<BaseGroup> groups = assign_bases(sheared, t);
  auto [survivors, m_discarded] = prune_sparse_bases(groups, m, n);
  const std::map<int, LevelBucket> buckets = bucket_bases(survivors, m, n);
  const int j_star = choose_level(buckets, m);
  const LevelBucket& bucket = buckets.at(j_star);

  TriangleSet t_j;
  for (const BaseGroup& g : bucket.bases)
    for (int apex : g.apexes) t_j.emplace_back(g.a, g.b, apex);

  IntervalMultiset<PairWitness> m0 = build_projected_pairs(bucket, sheared);
  if (m0.empty())
    throw std::runtime_error(
        "selected level contains no apex pairs; instance too sparse for the pairing pipeline");
  const std::size_t n0 = m0.endpoint_set().size();

  const WeightedSelection<PairWitness> ws = weighted_select(m0);

  // Dyadic z0 retries within the selected split gap.
  Rational gap_lo = ws.gap_lo;
  Rational gap_hi = ws.gap_hi;
  constexpr std::size_t kMaxRetries = 32;
  std::size_t retries = 0;
  Rational z0;
  LiftOutcome lift;
  StabbingResult<PairWitness> stab;
  Point2 x0_sheared;
  const ContainmentCounter t_j_counter(sheared, t_j);
  for (;;) {
    z0 = midpoint(gap_lo, gap_hi);
    bool degenerate = false;
    bool on_point_x = false;
    for (const Point2& p : sheared.points)
      if (p.x == z0) on_point_x = true;
    if (!on_point_x) {
      lift = lift_to_vertical(ws.selected, z0, sheared);
      degenerate = lift.degenerate_dropped > 0 || lift.duplicates_dropped > 0;
      if (!lift.segments.empty()) {
        IntervalMultiset<PairWitness> m2_intervals;
        for (const LiftedSegment& seg : lift.segments)
          m2_intervals.add(seg.y_lo, seg.y_hi, seg.witness);
        stab = max_stabbing(m2_intervals);
        x0_sheared = {z0, stab.point};
        for (const Triangle& tri : t_j)
          if (detail::point_on_triangle_boundary(x0_sheared, tri, sheared)) degenerate = true;
      }
    }
    if ((!on_point_x && !degenerate && !lift.segments.empty()) || retries >= kMaxRetries) {
      if (on_point_x || lift.segments.empty())
        throw std::runtime_error("z0 degeneracy unresolved after " +
                                 std::to_string(kMaxRetries) + " dyadic retries");
      break;
    }
    gap_hi = midpoint(gap_lo, gap_hi);  // left half of the current gap
    ++retries;
  }

  const std::size_t depth_pairs = stab.depth;
  const std::size_t depth_triangles = t_j_counter.count(x0_sheared);

  SelectionCertificate cert;
  cert.n = n;
  cert.m = m;
  cert.m_discarded = m_discarded;
  cert.j_star = j_star;
  cert.m_j = bucket.m_j;
  cert.M0_size = m0.size();
  cert.n0 = n0;
  cert.M1_size = ws.m_prime;
  cert.n1 = ws.n_prime;
  cert.M2_size = lift.segments.size();
  cert.n2 = count_distinct_y_endpoints(lift.segments);
  cert.levels_used = ws.levels_used;
  cert.z0_retries = retries;
  cert.shear_eps = eps;
  cert.z0 = z0;
  cert.x0 = unshear_point(x0_sheared, eps);
  cert.depth_pairs = depth_pairs;
  cert.depth_triangles = depth_triangles;
  const BigInt lg = ceil_log2(n);
  cert.bound_rhs = Rational(BigInt(m) * BigInt(m) * BigInt(m),
                            pow_int(BigInt(n), 6) * lg * lg);

  const BigInt n_sq = BigInt(n) * BigInt(n);
  const auto add_check = [&cert](std::string name, Rational lhs, std::string op, Rational rhs) {
    ChainCheck c{std::move(name), std::move(lhs), std::move(op), std::move(rhs), false};
    c.pass = c.evaluate();
    cert.chain_checks.push_back(std::move(c));
  };

  // C1: fewer than m/2 triangles discarded, and survivors all meet m/n^2.
  add_check("C1a_discarded_lt_half", Rational(m_discarded), "<", Rational(m, 2));
  BigInt min_survivor = -1;
  for (const auto& g : survivors)
    if (min_survivor < 0 || BigInt(g.m_ab()) < min_survivor) min_survivor = BigInt(g.m_ab());
  add_check("C1b_survivor_min_load", Rational(min_survivor), ">=", Rational(BigInt(m), n_sq));

  // C2: every bucketed group load sits in its half-open level range.
  BigInt c2_violations = 0;
  for (const auto& [j, b] : buckets) {
    const BigInt lo = pow_int(4, static_cast<unsigned>(j - 1)) * BigInt(m);
    const BigInt hi = pow_int(4, static_cast<unsigned>(j)) * BigInt(m);
    for (const auto& g : b.bases) {
      const BigInt scaled = BigInt(g.m_ab()) * n_sq;
      if (!(lo <= scaled && scaled < hi)) ++c2_violations;
    }
  }
  add_check("C2_bucket_ranges", Rational(c2_violations), "==", Rational(0));

  // C3: the chosen level carries at least 2^-(j*+1) * m triangles.
  add_check("C3_level_mass",
            Rational((BigInt(1) << static_cast<unsigned>(j_star + 1)) * BigInt(bucket.m_j)), ">=",
            Rational(m));

  // C4: |M0| >= (m_j / 2) * (4^(j*-1) * m / n^2 - 1).
  const Rational c4_rhs = Rational(bucket.m_j, 2) *
                          (Rational(pow_int(4, static_cast<unsigned>(j_star - 1)) * BigInt(m), n_sq) - 1);
  add_check("C4_pair_count", Rational(cert.M0_size), ">=", c4_rhs);

  // C5: weighted selection ratio m'/n' >= |M0| / (n0 * L).
  add_check("C5_weighted_ratio", Rational(BigInt(cert.M1_size), BigInt(cert.n1)), ">=",
            Rational(BigInt(cert.M0_size), BigInt(n0) * BigInt(cert.levels_used)));

  // C6: n2 <= n * n1.
  add_check("C6_endpoint_product", Rational(cert.n2), "<=", Rational(BigInt(n) * BigInt(cert.n1)));

  // C7: lifted segments pairwise distinct after dedup.
  BigInt c7_duplicates = 0;
  for (std::size_t i = 1; i < lift.segments.size(); ++i)
    if (lift.segments[i - 1].y_lo == lift.segments[i].y_lo &&
        lift.segments[i - 1].y_hi == lift.segments[i].y_hi)
      ++c7_duplicates;
  add_check("C7_segments_distinct", Rational(c7_duplicates), "==", Rational(0));

  // C8: depth_triangles >= ceil(depth_pairs / (4^j* * m / n^2)).
  const BigInt c8_rhs =
      ceil_div(BigInt(depth_pairs) * n_sq, pow_int(4, static_cast<unsigned>(j_star)) * BigInt(m));
  add_check("C8_pair_to_triangle_depth", Rational(depth_triangles), ">=", Rational(c8_rhs));

  // C9: sampled interior points of every lifted segment lie in the closed
  // union of the witness triangles.
  add_check("C9_segment_in_union",
            Rational(BigInt(detail::count_union_violations(lift.segments, sheared))), "==",
            Rational(0));

  return cert;
}

// Appends the oracle-consistency check C10 once an exact maximum depth for
// the same instance is known.
inline void append_oracle_check(SelectionCertificate& cert, std::size_t oracle_depth) {
  ChainCheck c{"C10_oracle_consistency", Rational(cert.depth_triangles), "<=",
               Rational(oracle_depth), false};
  c.pass = c.evaluate();
  cert.chain_checks.push_back(std::move(c));
}

}  // namespace trisel
