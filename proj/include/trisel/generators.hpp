#pragma once

// Seeded, deterministic instance generators. Points get integer coordinates
// inside a box of side 8*n^4 (kept small enough that downstream rationals
// stay cheap) and every candidate set is rejection-resampled until the exact
// general-position validation is clean.

#include "trisel/geometry.hpp"
#include "trisel/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace trisel {

enum class Family { UniformGridPerturbed, RandomInteger, ConvexPosition, TwoClusters };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::UniformGridPerturbed: return "uniform_grid_perturbed";
    case Family::RandomInteger: return "random_integer";
    case Family::ConvexPosition: return "convex_position";
    case Family::TwoClusters: return "two_clusters";
  }
  throw std::invalid_argument("unknown family");
}

inline Family parse_family(const std::string& name) {
  if (name == "uniform_grid_perturbed") return Family::UniformGridPerturbed;
  if (name == "random_integer") return Family::RandomInteger;
  if (name == "convex_position") return Family::ConvexPosition;
  if (name == "two_clusters") return Family::TwoClusters;
  throw std::invalid_argument("unknown family '" + name + "'");
}

struct GeneratorSpec {
  Family family = Family::RandomInteger;
  int n = 0;
  long long m = -1;  // -1 means ALL
  std::uint64_t seed = 0;
};

// Unbiased bounded sampling on top of mt19937_64; std::uniform_int_distribution
// is implementation-defined, which would break cross-platform determinism.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

inline long long int_in(std::mt19937_64& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(
                  uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

inline long long binomial3(long long n) {
  return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6;
}

namespace detail {

inline std::vector<Point2> sample_candidate(Family family, int n, long long box,
                                            std::mt19937_64& rng) {
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(n));
  switch (family) {
    case Family::RandomInteger: {
      for (int i = 0; i < n; ++i)
        pts.push_back({Rational(int_in(rng, 0, box)), Rational(int_in(rng, 0, box))});
      break;
    }
    case Family::UniformGridPerturbed: {
      int grid = 1;
      while (grid * grid < n) ++grid;
      const long long cell = box / grid;
      const long long jitter = std::max<long long>(1, cell / 3);
      for (int i = 0; i < n; ++i) {
        const long long cx = (i % grid) * cell + cell / 2;
        const long long cy = (i / grid) * cell + cell / 2;
        pts.push_back({Rational(cx + int_in(rng, -jitter, jitter)),
                       Rational(cy + int_in(rng, -jitter, jitter))});
      }
      break;
    }
    case Family::ConvexPosition: {
      // Distinct abscissae on the parabola y = x^2: automatically in convex
      // position with no three collinear.
      long long k = 1;
      while (2 * k * k <= box) ++k;
      --k;
      std::set<long long> xs;
      while (static_cast<int>(xs.size()) < n) xs.insert(int_in(rng, -k, k));
      for (long long x : xs) pts.push_back({Rational(x), Rational(x * x)});
      break;
    }
    case Family::TwoClusters: {
      const long long cluster = std::max<long long>(8, box / 8);
      const long long offset = box - cluster;
      for (int i = 0; i < n; ++i) {
        const long long base_x = i < n / 2 ? 0 : offset;
        pts.push_back({Rational(base_x + int_in(rng, 0, cluster)),
                       Rational(int_in(rng, 0, cluster))});
      }
      break;
    }
  }
  return pts;
}

}  // namespace detail

inline PointSet gen_points(const GeneratorSpec& spec) {
  if (spec.n < 4) throw std::invalid_argument("generator requires n >= 4");
  if (spec.n > 512) throw std::invalid_argument("generator supports n <= 512");
  const long long nn = spec.n;
  const long long box = 8 * nn * nn * nn * nn;
  std::mt19937_64 rng(spec.seed);

  for (int attempt = 0; attempt < 1000; ++attempt) {
    PointSet candidate;
    candidate.points = detail::sample_candidate(spec.family, spec.n, box, rng);
    candidate.label = family_name(spec.family);
    if (validate_general_position(candidate).clean()) return candidate;
  }
  throw std::runtime_error("generator degenerate: 1000 consecutive rejections");
}

// ALL (m < 0) yields every index triple in lexicographic order; otherwise a
// uniform m-subset without replacement, re-sorted canonically.
inline TriangleSet gen_triangles(const PointSet& s, long long m, std::uint64_t seed) {
  const long long n = static_cast<long long>(s.size());
  const long long total = binomial3(n);
  if (m > total) throw std::invalid_argument("m exceeds C(n,3)");

  TriangleSet all;
  all.reserve(static_cast<std::size_t>(total));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) all.emplace_back(i, j, k);
  if (m < 0 || m == total) return all;

  std::mt19937_64 rng(seed);
  for (long long i = 0; i < m; ++i) {
    const long long pick = i + static_cast<long long>(
                                   uniform_below(rng, static_cast<std::uint64_t>(total - i)));
    std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(pick)]);
  }
  all.resize(static_cast<std::size_t>(m));
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace trisel
