// SPDX-License-Identifier: Apache-2.0
#include "pinchopt/solver_csm.hpp"

#include <algorithm>
#include <cmath>

namespace pinchopt::csm {

namespace {

constexpr double kBoundarySlack = 1e-10;  // m
constexpr double kDegenerateCoeff = 1e-14;

struct QuadraticRoots {
  int count = 0;
  double r[2] = {0.0, 0.0};
};

// Numerically stable roots of A x^2 + B x + C = 0. A near-zero leading
// coefficient degrades to the linear equation; identical parabolas
// (A == B == 0) contribute no roots.
QuadraticRoots solve_quadratic(double a, double b, double c) {
  QuadraticRoots out;
  if (std::abs(a) < kDegenerateCoeff) {
    if (std::abs(b) < kDegenerateCoeff) return out;
    out.count = 1;
    out.r[0] = -c / b;
    return out;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return out;
  const double root = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(root, b));
  if (q == 0.0) {  // b == 0 and disc == 0: double root at the origin
    out.count = 1;
    out.r[0] = 0.0;
    return out;
  }
  out.count = 2;
  out.r[0] = q / a;
  out.r[1] = c / q;
  return out;
}

}  // namespace

CandidateSet candidates(const CoordinateProblem& problem, const Interval& iv) {
  CandidateSet out;
  auto add = [&](double x, CandidateKind kind) {
    x = std::clamp(x, iv.lo, iv.hi);
    out.points.push_back(Candidate{x, kind, problem.envelope(x)});
  };

  if (iv.hi <= iv.lo) {  // degenerate interval: the single admissible point
    add(iv.lo, CandidateKind::kEndpoint);
    return out;
  }
  add(iv.lo, CandidateKind::kEndpoint);
  add(iv.hi, CandidateKind::kEndpoint);

  const std::vector<Parabola>& ps = problem.parabolas;
  for (const Parabola& pb : ps) {
    if (pb.vertex >= iv.lo && pb.vertex <= iv.hi)
      add(pb.vertex, CandidateKind::kVertex);
  }

  for (std::size_t u = 0; u + 1 < ps.size(); ++u) {
    for (std::size_t w = u + 1; w < ps.size(); ++w) {
      // h_u(x) - h_w(x) expanded in monomials
      const double a = ps[w].curvature - ps[u].curvature;
      const double b = 2.0 * (ps[u].curvature * ps[u].vertex -
                              ps[w].curvature * ps[w].vertex);
      const double c =
          (ps[u].peak - ps[u].curvature * ps[u].vertex * ps[u].vertex) -
          (ps[w].peak - ps[w].curvature * ps[w].vertex * ps[w].vertex);
      const QuadraticRoots roots = solve_quadratic(a, b, c);
      for (int k = 0; k < roots.count; ++k) {
        const double r = roots.r[k];
        if (r >= iv.lo - kBoundarySlack && r <= iv.hi + kBoundarySlack)
          add(r, CandidateKind::kCrossing);
      }
    }
  }
  return out;
}

CoordinateOptimum maximize_coordinate(const CoordinateProblem& problem,
                                      const IntervalSet& region) {
  if (region.empty())
    throw NoFeasiblePosition("csm: empty feasible region for coordinate");
  CoordinateOptimum best;
  bool have = false;
  for (const Interval& iv : region.items()) {
    const CandidateSet set = candidates(problem, iv);
    for (const Candidate& c : set.points) {
      if (!have) {
        best = {c.x, c.value};
        have = true;
        continue;
      }
      const double tol = 1e-12 * std::abs(best.value);
      if (c.value > best.value + tol ||
          (std::abs(c.value - best.value) <= tol && c.x < best.x))
        best = {c.x, c.value};
    }
  }
  return best;
}

}  // namespace pinchopt::csm
