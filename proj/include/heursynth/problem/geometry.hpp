#pragma once

#include <span>

#include "heursynth/problem/types.hpp"

namespace heursynth {

double distance(const Point2& a, const Point2& b);

/// Euclidean MST length over the complete graph (Prim, O(n^2)).
double mst_length(std::span<const Point2> points);

/// Geometric median of a triangle (Weiszfeld iteration); equals the Fermat
/// point when every angle is below 120 degrees, else the obtuse vertex.
Point2 fermat_point(const Point2& a, const Point2& b, const Point2& c);

}  // namespace heursynth
