#include "heursynth/problem/geometry.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace heursynth {

double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double mst_length(std::span<const Point2> points) {
  const std::size_t n = points.size();
  if (n < 2) return 0.0;
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<bool> in_tree(n, false);
  best[0] = 0.0;
  double total = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_tree[i] && (pick == n || best[i] < best[pick])) pick = i;
    }
    in_tree[pick] = true;
    total += best[pick];
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_tree[i]) best[i] = std::min(best[i], distance(points[pick], points[i]));
    }
  }
  return total;
}

Point2 fermat_point(const Point2& a, const Point2& b, const Point2& c) {
  const Point2 verts[3] = {a, b, c};
  // A vertex with angle >= 120 degrees is the minimizer.
  for (int i = 0; i < 3; ++i) {
    const Point2& p = verts[i];
    const Point2& q = verts[(i + 1) % 3];
    const Point2& r = verts[(i + 2) % 3];
    double ux = q.x - p.x, uy = q.y - p.y, vx = r.x - p.x, vy = r.y - p.y;
    double nu = std::hypot(ux, uy), nv = std::hypot(vx, vy);
    if (nu == 0 || nv == 0) return p;
    if ((ux * vx + uy * vy) / (nu * nv) <= -0.5) return p;
  }
  Point2 x{(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
  for (int iter = 0; iter < 200; ++iter) {
    double wx = 0, wy = 0, w = 0;
    for (const Point2& v : verts) {
      double d = distance(x, v);
      if (d < 1e-15) return v;
      wx += v.x / d;
      wy += v.y / d;
      w += 1.0 / d;
    }
    Point2 next{wx / w, wy / w};
    if (distance(next, x) < 1e-15) return next;
    x = next;
  }
  return x;
}

}  // namespace heursynth
