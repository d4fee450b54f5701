#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "cayley/geodesics.hpp"

namespace cayley {

// Finite window gamma_a, ..., gamma_b (a <= 0 <= b) of a bi-infinite path.
// Indices are the line parameter, not vector offsets; at(0) is the base
// point.
class LineWindow {
 public:
  static LineWindow unchecked(int a, std::vector<GroupElement> pts) {
    LineWindow w;
    w.a_ = a;
    w.pts_ = std::move(pts);
    if (w.pts_.empty() || w.a_ > 0 || w.b() < 0)
      throw std::invalid_argument("LineWindow: window must contain index 0");
    return w;
  }

  int a() const { return a_; }
  int b() const { return a_ + static_cast<int>(pts_.size()) - 1; }
  int length() const { return static_cast<int>(pts_.size()) - 1; }
  const std::vector<GroupElement>& points() const { return pts_; }

  const GroupElement& at(int n) const {
    if (n < a() || n > b())
      throw std::out_of_range("LineWindow::at: index outside window");
    return pts_[n - a_];
  }
  const GroupElement& base() const { return at(0); }

  bool operator==(const LineWindow&) const = default;

 private:
  int a_ = 0;
  std::vector<GroupElement> pts_;
};

inline std::vector<GroupElement> window_steps(const GroupSpec& g,
                                              const LineWindow& w) {
  std::vector<GroupElement> steps;
  for (int n = w.a(); n < w.b(); ++n)
    steps.push_back(g.sub(w.at(n + 1), w.at(n)));
  return steps;
}

// Validating constructor: every consecutive difference must be a generator.
inline LineWindow make_line_window(const GeneratingSet& s, int a,
                                   std::vector<GroupElement> pts) {
  const GroupSpec& g = s.group();
  std::vector<GroupElement> canon;
  for (auto& p : pts) canon.push_back(g.canonical(p.free, p.torsion));
  LineWindow w = LineWindow::unchecked(a, std::move(canon));
  for (const auto& st : window_steps(g, w))
    if (!s.contains(st))
      throw std::invalid_argument("make_line_window: step not in generating set");
  return w;
}

// n -> h + n * step for n in [a, b].  The step must be a generator.
inline LineWindow algebraic_line(const GeneratingSet& s, const GroupElement& h,
                                 const GroupElement& step, int a, int b) {
  if (a > 0 || b < 0 || a > b)
    throw std::invalid_argument("algebraic_line: need a <= 0 <= b");
  const GroupSpec& g = s.group();
  GroupElement st = g.canonical(step.free, step.torsion);
  if (!s.contains(st))
    throw std::invalid_argument("algebraic_line: step not in generating set");
  GroupElement base = g.canonical(h.free, h.torsion);
  std::vector<GroupElement> pts;
  for (int n = a; n <= b; ++n)
    pts.push_back(g.add(base, g.scalar_mul(n, st)));
  return LineWindow::unchecked(a, std::move(pts));
}

struct QuasiTypeResult {
  bool quasi_algebraic = false;
  std::vector<i64> type;   // common free part of the steps
  int offending_step = 0;  // first step index whose free part differs
};

// A window is quasi-algebraic when all its steps share one image in the
// torsion-free quotient; that image is its quasi-type.
inline QuasiTypeResult quasi_type(const GroupSpec& g, const LineWindow& w) {
  QuasiTypeResult r;
  auto steps = window_steps(g, w);
  if (steps.empty()) {
    r.quasi_algebraic = true;
    r.type = std::vector<i64>(g.rank(), 0);
    return r;
  }
  r.type = steps[0].free;
  for (std::size_t i = 1; i < steps.size(); ++i)
    if (steps[i].free != r.type) {
      r.quasi_algebraic = false;
      r.offending_step = w.a() + static_cast<int>(i);
      r.type.clear();
      return r;
    }
  r.quasi_algebraic = true;
  return r;
}

// True iff d(gamma_j, gamma_k) = k - j for every a <= j <= k <= b, resolved
// against a prebuilt ball whose radius must cover the window length.
inline bool is_geodesic_window(const MetricBall& b, const LineWindow& w) {
  if (b.radius() < w.length())
    throw std::invalid_argument("is_geodesic_window: ball radius too small");
  const GroupSpec& g = b.genset().group();
  for (int j = w.a(); j <= w.b(); ++j)
    for (int k = j + 1; k <= w.b(); ++k) {
      auto d = b.distance_to_origin(g.sub(w.at(k), w.at(j)));
      if (!d || *d != k - j) return false;
    }
  return true;
}

inline bool is_geodesic_window(const GeneratingSet& s, const LineWindow& w,
                               const SearchLimits& limits = {}) {
  return is_geodesic_window(ball(s, w.length(), limits), w);
}

inline Segment window_subsegment(const LineWindow& w, int n, int m) {
  Segment seg;
  for (int i = n; i <= m; ++i) seg.points.push_back(w.at(i));
  return seg;
}

struct ConvexityResult {
  bool convex = true;
  int n = 0, m = 0;  // witness pair when not convex
  std::optional<Segment> second_geodesic;
};

// A geodesic window is convex when the window itself is the only geodesic
// between each pair of its points.  Returns a distinct geodesic as witness
// otherwise.
inline ConvexityResult is_convex_on_window(const GeneratingSet& s,
                                           const LineWindow& w,
                                           const SearchLimits& limits = {}) {
  if (!is_geodesic_window(s, w, limits))
    throw std::invalid_argument("is_convex_on_window: not a geodesic window");
  ConvexityResult res;
  for (int n = w.a(); n <= w.b(); ++n)
    for (int m = n + 2; m <= w.b(); ++m) {
      auto geos = enumerate_geodesics(s, w.at(n), w.at(m), limits);
      if (geos.size() <= 1) continue;
      Segment expected = window_subsegment(w, n, m);
      for (const auto& gseg : geos)
        if (!(gseg == expected)) {
          res.convex = false;
          res.n = n;
          res.m = m;
          res.second_geodesic = gseg;
          return res;
        }
    }
  return res;
}

struct ReorderingWitness {
  int n = 0, m = 0;
  Segment original;
  Segment reordered;
};

// For a non-algebraic geodesic window, moving a later, different step to the
// front of a sub-segment produces a second geodesic with the same endpoints
// — an explicit non-convexity witness.  Returns nullopt when all steps are
// equal (the window is algebraic).  The caller guarantees the window is
// geodesic; the construction itself is purely combinatorial.
inline std::optional<ReorderingWitness> nonconvexity_witness_by_reordering(
    const GroupSpec& g, const LineWindow& w) {
  auto steps = window_steps(g, w);
  for (std::size_t i = 0; i + 1 < steps.size(); ++i)
    if (!(steps[i] == steps[i + 1])) {
      const int n = w.a() + static_cast<int>(i);
      const int m = n + 2;
      ReorderingWitness wit;
      wit.n = n;
      wit.m = m;
      wit.original = window_subsegment(w, n, m);
      const GroupElement& late = steps[i + 1];
      wit.reordered.points.push_back(w.at(n));
      wit.reordered.points.push_back(g.add(w.at(n), late));
      wit.reordered.points.push_back(w.at(m));
      return wit;
    }
  return std::nullopt;
}

// Periodic extension of the stretch [n, m]: index z maps to
// floor(z/(m-n)) * (gamma_m - gamma_n) + gamma_{n + (z mod (m-n))},
// evaluated over the input window.  Steps of the result are the steps of
// the input read cyclically (the period jump telescopes), so the quasi-type
// is preserved period by period.
inline LineWindow periodicize(const GroupSpec& g, const LineWindow& w, int n,
                              int m) {
  if (m <= n) throw std::invalid_argument("periodicize: need n < m");
  if (n < w.a() || m > w.b())
    throw std::invalid_argument("periodicize: [n, m] outside window");
  const i64 p = m - n;
  GroupElement jump = g.sub(w.at(m), w.at(n));
  std::vector<GroupElement> pts;
  for (int z = w.a(); z <= w.b(); ++z) {
    i64 q = floor_div(z, p);
    i64 r = z - q * p;
    pts.push_back(g.add(g.scalar_mul(q, jump), w.at(n + static_cast<int>(r))));
  }
  return LineWindow::unchecked(w.a(), std::move(pts));
}

struct ParallelTransferReport {
  bool reference_geodesic = false;  // algebraic line of the type through 0
  std::size_t lines_checked = 0;
  std::size_t geodesic_lines = 0;
  // All sampled parallels agree (all geodesic or none) — the transfer
  // property and its contrapositive.
  bool uniform = false;
  std::vector<GroupElement> type_steps;
  std::optional<LineWindow> geodesic_example;
  std::optional<LineWindow> non_geodesic_example;
};

// Samples quasi-algebraic windows of the quasi-type of type_elem: every
// step pattern over the generators sharing that free part (exhaustive up to
// a cap, then seeded sampling), through the identity plus seeded random base
// points.  Reports whether geodesicity is uniform across the sample.
inline ParallelTransferReport parallel_geodesic_transfer(
    const GeneratingSet& s, const GroupElement& type_elem, int a, int b,
    std::size_t base_samples = 4, std::uint64_t seed = 0, int threads = 1,
    const SearchLimits& limits = {}) {
  if (a > 0 || b < 0 || a >= b)
    throw std::invalid_argument("parallel_geodesic_transfer: bad window");
  const GroupSpec& g = s.group();
  GroupElement te = g.canonical(type_elem.free, type_elem.torsion);
  if (!s.contains(te))
    throw std::invalid_argument(
        "parallel_geodesic_transfer: type element not in generating set");
  if (free_norm_sq(te) == 0)
    throw std::invalid_argument(
        "parallel_geodesic_transfer: zero quasi-type");

  ParallelTransferReport rep;
  for (const auto& t : s.elements())
    if (t.free == te.free) rep.type_steps.push_back(t);

  const int L = b - a;
  const MetricBall dist_ball = ball(s, L, limits);
  rep.reference_geodesic =
      is_geodesic_window(dist_ball, algebraic_line(s, g.identity(), te, a, b));

  // Base points: identity first, then seeded draws from a small box.
  std::mt19937_64 rng(seed);
  std::vector<GroupElement> bases{g.identity()};
  std::uniform_int_distribution<i64> box(-2, 2);
  while (bases.size() < base_samples) {
    std::vector<i64> free(g.rank()), tor(g.torsion_count());
    for (auto& v : free) v = box(rng);
    for (int i = 0; i < g.torsion_count(); ++i)
      tor[i] = std::uniform_int_distribution<i64>(
          0, g.torsion_factors()[i] - 1)(rng);
    bases.push_back(g.canonical(std::move(free), std::move(tor)));
  }

  // Step patterns: exhaustive odometer when small, seeded sample otherwise.
  const std::size_t nsteps = rep.type_steps.size();
  std::size_t total_patterns = 1;
  bool overflow = false;
  for (int i = 0; i < L; ++i) {
    total_patterns *= nsteps;
    if (total_patterns > 4096) {
      overflow = true;
      break;
    }
  }
  std::vector<std::vector<int>> patterns;
  if (!overflow) {
    std::vector<int> idx(L, 0);
    while (true) {
      patterns.push_back(idx);
      int i = L - 1;
      while (i >= 0 && ++idx[i] == static_cast<int>(nsteps)) idx[i--] = 0;
      if (i < 0) break;
    }
  } else {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(nsteps) - 1);
    for (int k = 0; k < 4096; ++k) {
      std::vector<int> idx(L);
      for (auto& v : idx) v = pick(rng);
      patterns.push_back(std::move(idx));
    }
  }

  auto build_line = [&](const GroupElement& base,
                        const std::vector<int>& pattern) {
    // pattern[i] is the step from index a+i to a+i+1.
    GroupElement start = base;
    for (int i = 0; i < -a; ++i)
      start = g.sub(start, rep.type_steps[pattern[i]]);
    std::vector<GroupElement> pts{start};
    for (int i = 0; i < L; ++i)
      pts.push_back(g.add(pts.back(), rep.type_steps[pattern[i]]));
    return LineWindow::unchecked(a, std::move(pts));
  };

  struct Slot {
    std::size_t checked = 0, geodesic = 0;
    std::size_t first_geo = SIZE_MAX, first_non = SIZE_MAX;
    std::optional<LineWindow> geo, non;
  };
  const std::size_t total = bases.size() * patterns.size();
  const int nthreads = std::max(1, threads);
  std::vector<Slot> slots(nthreads);

  auto worker = [&](int who) {
    Slot& slot = slots[who];
    for (std::size_t f = who; f < total; f += nthreads) {
      const auto& base = bases[f / patterns.size()];
      const auto& pattern = patterns[f % patterns.size()];
      LineWindow line = build_line(base, pattern);
      ++slot.checked;
      if (is_geodesic_window(dist_ball, line)) {
        ++slot.geodesic;
        if (f < slot.first_geo) {
          slot.first_geo = f;
          slot.geo = std::move(line);
        }
      } else if (f < slot.first_non) {
        slot.first_non = f;
        slot.non = std::move(line);
      }
    }
  };
  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker, i);
    for (auto& th : pool) th.join();
  }

  std::size_t first_geo = SIZE_MAX, first_non = SIZE_MAX;
  for (auto& slot : slots) {
    rep.lines_checked += slot.checked;
    rep.geodesic_lines += slot.geodesic;
    if (slot.first_geo < first_geo) {
      first_geo = slot.first_geo;
      rep.geodesic_example = slot.geo;
    }
    if (slot.first_non < first_non) {
      first_non = slot.first_non;
      rep.non_geodesic_example = slot.non;
    }
  }
  rep.uniform =
      rep.geodesic_lines == 0 || rep.geodesic_lines == rep.lines_checked;
  return rep;
}

}  // namespace cayley
