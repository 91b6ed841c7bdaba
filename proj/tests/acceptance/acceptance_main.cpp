// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Temp artifacts go under the system temp directory.

#include "trisel/cli.hpp"
#include "trisel/depth.hpp"
#include "trisel/generators.hpp"
#include "trisel/intervals.hpp"
#include "trisel/selection.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace trisel;

namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "trisel_acceptance";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path_of(const std::string& name) { return (work_dir() / name).string(); }

// The run matrix behind criteria 3 and 4: all four families, n in [8, 20],
// m in {C(n,3), n^2} (clamped to C(n,3); n=8 has n^2 > C(8,3)), seed 1
// everywhere plus seed 2 for n <= 19. Exactly 200 runs.
struct MatrixRun {
  Family family;
  int n;
  long long m;  // -1 for ALL
  std::uint64_t seed;
};

std::vector<MatrixRun> run_matrix() {
  const Family families[] = {Family::UniformGridPerturbed, Family::RandomInteger,
                             Family::ConvexPosition, Family::TwoClusters};
  std::vector<MatrixRun> runs;
  for (const std::uint64_t seed : {1ull, 2ull}) {
    const int n_hi = seed == 1 ? 20 : 19;
    for (const Family family : families) {
      for (int n = 8; n <= n_hi; ++n) {
        const long long all = binomial3(n);
        const long long square = std::min<long long>(all, static_cast<long long>(n) * n);
        runs.push_back({family, n, -1, seed});
        runs.push_back({family, n, square, seed});
      }
    }
  }
  return runs;
}

Outcome criterion_unweighted_exhaustive() {
  std::size_t cases = 0;
  for (int n = 2; n <= 6; ++n) {
    std::vector<std::pair<int, int>> spans;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) spans.emplace_back(i, j);
    const std::uint32_t subsets = 1u << spans.size();
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
      IntervalMultiset<int> e;
      for (std::size_t bit = 0; bit < spans.size(); ++bit)
        if (mask & (1u << bit))
          e.add(Rational(spans[bit].first), Rational(spans[bit].second), static_cast<int>(bit));
      const auto result = max_stabbing(e);
      const BigInt bound = unweighted_depth_bound(e.size(), e.endpoint_set().size());
      if (BigInt(result.depth) < bound) {
        std::ostringstream msg;
        msg << "bound violated at n=" << n << " mask=" << mask << " depth=" << result.depth
            << " bound=" << bound;
        return {false, msg.str()};
      }
      ++cases;
    }
  }
  return {true, std::to_string(cases) + " subsets, depth >= ceil(m^2/(4n^2)) on all"};
}

Outcome criterion_weighted_random() {
  std::size_t total_items = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    std::mt19937_64 rng(seed);
    const int n_values = static_cast<int>(2 + uniform_below(rng, 63));  // |V| <= 64
    std::vector<long long> values;
    {
      std::vector<char> used(2000001, 0);
      while (static_cast<int>(values.size()) < n_values) {
        const long long v = int_in(rng, -1000000, 1000000);
        if (!used[static_cast<std::size_t>(v + 1000000)]) {
          used[static_cast<std::size_t>(v + 1000000)] = 1;
          values.push_back(v);
        }
      }
      std::sort(values.begin(), values.end());
    }
    IntervalMultiset<int> e;
    const std::size_t target = 1 + uniform_below(rng, 512);  // m <= 512
    int id = 0;
    while (e.size() < target) {
      const std::size_t a = uniform_below(rng, static_cast<std::uint64_t>(n_values) - 1);
      const std::size_t b =
          a + 1 + uniform_below(rng, static_cast<std::uint64_t>(n_values) - 1 - a);
      const std::size_t mult =
          std::min<std::size_t>(1 + uniform_below(rng, 8), target - e.size());
      for (std::size_t c = 0; c < mult; ++c)
        e.add(Rational(values[a]), Rational(values[b]), id++);
    }
    total_items += e.size();

    const auto result = weighted_select(e);
    const std::size_t n = e.endpoint_set().size();
    int floor_log2 = 0;
    while ((std::size_t{1} << (floor_log2 + 1)) <= n) ++floor_log2;
    if (result.levels_used > floor_log2 + 1)
      return {false, "levels_used exceeded floor(log2 |V|)+1 at seed " + std::to_string(seed)};
    if (BigInt(result.m_prime) * BigInt(n) * result.levels_used <
        BigInt(e.size()) * BigInt(result.n_prime))
      return {false, "ratio guarantee failed at seed " + std::to_string(seed)};
    for (const auto& item : result.selected)
      if (!(item.lo < result.common_point && result.common_point < item.hi))
        return {false, "common point not interior at seed " + std::to_string(seed)};
  }
  return {true, "1000 multisets (" + std::to_string(total_items) + " intervals total)"};
}

struct MatrixOutcome {
  Outcome chain;   // criterion 3
  Outcome oracle;  // criterion 4
  double chain_seconds = 0.0;
  double oracle_seconds = 0.0;
};

MatrixOutcome criteria_matrix() {
  const std::vector<MatrixRun> runs = run_matrix();
  std::size_t oracle_runs = 0;
  MatrixOutcome result;
  for (std::size_t idx = 0; idx < runs.size(); ++idx) {
    const MatrixRun& run = runs[idx];
    std::ostringstream tag;
    tag << family_name(run.family) << " n=" << run.n << " m=" << run.m << " seed=" << run.seed;

    const auto chain_start = std::chrono::steady_clock::now();
    Instance inst;
    inst.points = gen_points({run.family, run.n, run.m, run.seed});
    inst.triangles = gen_triangles(inst.points, run.m, run.seed);
    const SelectionCertificate cert = run_selection(inst.points, inst.triangles);
    if (const ChainCheck* failed = cert.first_failure()) {
      result.chain = {false, failed->name + " failed on " + tag.str()};
      result.oracle = {false, "not reached"};
      return result;
    }

    const std::string instance_path = path_of("matrix_instance.json");
    const std::string cert_path = path_of("matrix_cert.json");
    write_text_file(instance_path, dump_json(instance_to_json(inst)));
    write_text_file(cert_path, dump_json(certificate_to_json(cert)));
    std::ostringstream out, err;
    if (cmd_verify({instance_path, cert_path}, out, err) != kExitOk) {
      result.chain = {false, "cmd_verify rejected " + tag.str() + ": " + err.str()};
      result.oracle = {false, "not reached"};
      return result;
    }
    result.chain_seconds +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - chain_start).count();

    if (run.n <= 12) {
      const auto oracle_start = std::chrono::steady_clock::now();
      ++oracle_runs;
      const DepthResult oracle = exact_max_depth(inst.points, inst.triangles);
      if (cert.depth_triangles > oracle.depth) {
        result.oracle = {false, "C10 failed on " + tag.str()};
        return result;
      }
      const ContainmentCounter counter(inst.points, inst.triangles);
      std::mt19937_64 rng(run.seed * 7919 + static_cast<std::uint64_t>(run.n));
      const long long box = 8LL * run.n * run.n * run.n * run.n;
      for (int probe = 0; probe < 10000; ++probe) {
        const Point2 q{Rational(int_in(rng, -box / 8, box + box / 8), int_in(rng, 1, 4)),
                       Rational(int_in(rng, -box / 8, box + box / 8), int_in(rng, 1, 4))};
        if (counter.count(q) > oracle.depth) {
          result.oracle = {false, "probe beat the oracle on " + tag.str()};
          return result;
        }
      }
      result.oracle_seconds +=
          std::chrono::duration<double>(std::chrono::steady_clock::now() - oracle_start).count();
    }
  }

  std::ostringstream chain_detail, oracle_detail;
  chain_detail.precision(1);
  chain_detail << std::fixed << runs.size() << " runs, C1-C9 and cmd_verify clean in "
               << result.chain_seconds << "s (budget 300s)";
  oracle_detail.precision(1);
  oracle_detail << std::fixed << oracle_runs << " runs with oracle + 10^4 probes each in "
                << result.oracle_seconds << "s";
  result.chain = {result.chain_seconds < 300.0, chain_detail.str()};
  result.oracle = {true, oracle_detail.str()};
  return result;
}

Outcome criterion_known_instances() {
  PointSet square;
  square.points = {{Rational(0), Rational(0)}, {Rational(1), Rational(0)},
                   {Rational(1), Rational(1)}, {Rational(0), Rational(1)}};
  TriangleSet square_tris;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) square_tris.emplace_back(i, j, k);
  if (exact_max_depth(square, square_tris).depth != 2)
    return {false, "unit square depth != 2"};

  PointSet lone;
  lone.points = {{Rational(0), Rational(0)}, {Rational(3), Rational(0)},
                 {Rational(0), Rational(3)}};
  if (exact_max_depth(lone, {Triangle(0, 1, 2)}).depth != 1)
    return {false, "lone triangle depth != 1"};

  PointSet nested;
  nested.points = {{Rational(0), Rational(0)}, {Rational(10), Rational(0)},
                   {Rational(4), Rational(9)}, {Rational(5), Rational(3)}};
  TriangleSet nested_tris;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) nested_tris.emplace_back(i, j, k);
  if (exact_max_depth(nested, nested_tris).depth != 2)
    return {false, "one-inside configuration depth != 2"};

  return {true, "square=2, lone=1, one-inside=2"};
}

Outcome criterion_figure_pipeline() {
  PointSet s;
  s.points = {{Rational(0), Rational(0)}, {Rational(4), Rational(0)},
              {Rational(1), Rational(2)}, {Rational(3), Rational(2)}};
  const TriangleSet t = {Triangle(0, 1, 2), Triangle(0, 1, 3)};
  const SelectionCertificate cert = run_selection(s, t);
  if (cert.M2_size < 1) return {false, "no lifted segment"};
  if (cert.depth_triangles < 1) return {false, "depth_triangles < 1"};
  for (const ChainCheck& check : cert.chain_checks)
    if (check.name == "C9_segment_in_union" && !check.pass)
      return {false, "sampled segment points left the triangle union"};
  if (!cert.all_checks_pass()) return {false, cert.first_failure()->name + " failed"};
  return {true, "lifted segment in abc U abd, depth_triangles=" +
                    std::to_string(cert.depth_triangles)};
}

Outcome criterion_determinism() {
  std::ostringstream sink, err;

  GenOptions gen;
  gen.family = "two_clusters";
  gen.n = 10;
  gen.m = "ALL";
  gen.seed = 11;
  gen.out = path_of("det_a.json");
  if (cmd_gen(gen, sink, err) != kExitOk) return {false, "gen failed: " + err.str()};
  gen.out = path_of("det_b.json");
  if (cmd_gen(gen, sink, err) != kExitOk) return {false, "gen failed: " + err.str()};
  if (read_text_file(path_of("det_a.json")) != read_text_file(path_of("det_b.json")))
    return {false, "gen outputs differ"};

  SelectOptions select;
  select.in = path_of("det_a.json");
  select.cert_out = path_of("det_a.cert.json");
  if (cmd_select(select, sink, err) != kExitOk) return {false, "select failed: " + err.str()};
  select.cert_out = path_of("det_b.cert.json");
  if (cmd_select(select, sink, err) != kExitOk) return {false, "select failed: " + err.str()};
  if (read_text_file(path_of("det_a.cert.json")) != read_text_file(path_of("det_b.cert.json")))
    return {false, "certificates differ"};

  // Bench CSV: byte-identical outside the wall-clock runtime_ms column.
  const auto strip_runtime = [](const std::string& csv) {
    std::ostringstream cleaned;
    std::stringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
      const auto cut = line.rfind(',');
      cleaned << line.substr(0, cut) << "\n";
    }
    return cleaned.str();
  };
  BenchOptions bench;
  bench.families = "random_integer,convex_position";
  bench.n_range = "8..9";
  bench.trials = 2;
  bench.seed = 3;
  bench.oracle_max_n = 9;
  std::ostringstream csv_a, csv_b;
  if (cmd_bench(bench, csv_a, err) != kExitOk) return {false, "bench failed: " + err.str()};
  if (cmd_bench(bench, csv_b, err) != kExitOk) return {false, "bench failed: " + err.str()};
  if (strip_runtime(csv_a.str()) != strip_runtime(csv_b.str()))
    return {false, "bench CSVs differ beyond runtime_ms"};

  return {true, "gen/select byte-identical; bench identical modulo runtime_ms"};
}

Outcome criterion_performance() {
  const PointSet s20 = gen_points({Family::RandomInteger, 20, -1, 1});
  const TriangleSet t20 = gen_triangles(s20, -1, 1);
  const auto start_pipeline = std::chrono::steady_clock::now();
  const SelectionCertificate cert = run_selection(s20, t20);
  const double pipeline_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_pipeline).count();
  if (!cert.all_checks_pass()) return {false, "n=20 run failed its chain"};
  if (pipeline_s >= 10.0)
    return {false, "pipeline n=20 took " + std::to_string(pipeline_s) + "s (budget 10s)"};

  const PointSet s12 = gen_points({Family::RandomInteger, 12, -1, 1});
  const TriangleSet t12 = gen_triangles(s12, -1, 1);  // C(12,3) = 220
  const auto start_oracle = std::chrono::steady_clock::now();
  const DepthResult oracle = exact_max_depth(s12, t12);
  const double oracle_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_oracle).count();
  if (oracle.depth < 1) return {false, "oracle n=12 returned depth 0"};
  if (oracle_s >= 60.0)
    return {false, "oracle n=12 took " + std::to_string(oracle_s) + "s (budget 60s)"};

  std::ostringstream detail;
  detail.precision(2);
  detail << std::fixed << "pipeline n=20, m=1140: " << pipeline_s << "s; oracle n=12, m=220: "
         << oracle_s << "s";
  return {true, detail.str()};
}

Outcome criterion_scaling_report() {
  BenchOptions bench;
  bench.families = "random_integer";
  bench.n_range = "10..14";
  bench.trials = 1;
  bench.seed = 1;
  bench.m = "ALL";
  bench.csv_out = path_of("scaling_report.csv");
  std::ostringstream out, err;
  if (cmd_bench(bench, out, err) != kExitOk) return {false, "bench failed: " + err.str()};

  std::stringstream csv(read_text_file(bench.csv_out));
  std::string line;
  std::getline(csv, line);  // header
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 14) return {false, "malformed row: " + line};
    if (!(std::stod(cells[12]) > 0.0)) return {false, "c_emp <= 0 in row: " + line};
    ++rows;
  }
  if (rows != 5) return {false, "expected 5 rows, got " + std::to_string(rows)};
  return {true, "5 rows, every c_emp > 0; report at " + bench.csv_out};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> fn;
    double budget_seconds = 0.0;  // 0: no stated budget
  };

  MatrixOutcome matrix;
  bool matrix_done = false;
  const auto ensure_matrix = [&] {
    if (!matrix_done) {
      matrix = criteria_matrix();
      matrix_done = true;
    }
  };

  const std::vector<Criterion> criteria = {
      {1, "unweighted lemma exhaustive oracle (n <= 6)", criterion_unweighted_exhaustive, 120.0},
      {2, "weighted lemma property (1000 seeded multisets)", criterion_weighted_random, 30.0},
      {3, "certificate chain (200 seeded runs + cmd_verify)",
       [&] { ensure_matrix(); return matrix.chain; }},
      {4, "oracle consistency (n <= 12 runs, 10^4 probes each)",
       [&] { ensure_matrix(); return matrix.oracle; }},
      {5, "known-instance depth values", criterion_known_instances},
      {6, "figure-pair micro-pipeline", criterion_figure_pipeline},
      {7, "determinism of seeded commands", criterion_determinism},
      {8, "performance envelope", criterion_performance},
      {9, "scaling sanity report (c_emp > 0)", criterion_scaling_report},
  };

  bool all_pass = true;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.pass && criterion.budget_seconds > 0.0 && seconds >= criterion.budget_seconds) {
      outcome.pass = false;
      outcome.detail += " [budget " + std::to_string(criterion.budget_seconds) + "s exceeded]";
    }
    std::ostringstream line;
    line.precision(1);
    line << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id << ": "
         << criterion.name << " - " << outcome.detail << " (" << std::fixed << seconds << "s)";
    std::cout << line.str() << std::endl;
    all_pass = all_pass && outcome.pass;
  }
  std::cout << (all_pass ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES present")
            << std::endl;
  return all_pass ? 0 : 1;
}
