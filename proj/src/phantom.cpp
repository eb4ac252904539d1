#include "curvemg/phantom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace curvemg {

PhantomKind parse_phantom_kind(std::string_view name) {
  if (name == "shepp_logan") return PhantomKind::shepp_logan;
  if (name == "triangle") return PhantomKind::triangle;
  if (name == "shapes") return PhantomKind::shapes;
  throw std::invalid_argument("unknown phantom kind: " + std::string(name));
}

std::string_view to_string(PhantomKind kind) {
  switch (kind) {
    case PhantomKind::shepp_logan: return "shepp_logan";
    case PhantomKind::triangle: return "triangle";
    case PhantomKind::shapes: return "shapes";
  }
  return "unknown";
}

namespace {

struct Ellipse {
  double value, a, b, x0, y0, phi_deg;
};

// Modified Shepp-Logan (Toft), contrast-enhanced variant.
constexpr std::array<Ellipse, 10> kSheppLogan{{
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0},
    {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0},
}};

double shepp_logan_at(double x, double y) {
  double v = 0.0;
  for (const auto& e : kSheppLogan) {
    const double phi = e.phi_deg * std::numbers::pi / 180.0;
    const double dx = x - e.x0, dy = y - e.y0;
    const double xr = dx * std::cos(phi) + dy * std::sin(phi);
    const double yr = -dx * std::sin(phi) + dy * std::cos(phi);
    if ((xr * xr) / (e.a * e.a) + (yr * yr) / (e.b * e.b) <= 1.0) v += e.value;
  }
  // Overlapping ellipses cancel to zero only up to round-off.
  return std::clamp(v, 0.0, 1.0);
}

struct Point {
  double x, y;
};

bool inside_triangle(Point p, Point a, Point b, Point c) {
  auto edge = [](Point o, Point q, Point r) {
    return (q.x - o.x) * (r.y - o.y) - (q.y - o.y) * (r.x - o.x);
  };
  const double d1 = edge(a, b, p), d2 = edge(b, c, p), d3 = edge(c, a, p);
  const bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
  const bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(has_neg && has_pos);
}

// Coordinates in the unit square, x to the right, y downwards.
double triangle_at(double x, double y) {
  double v = 60.0;
  if (inside_triangle({x, y}, {0.12, 0.86}, {0.88, 0.86}, {0.5, 0.14})) v = 200.0;
  if (inside_triangle({x, y}, {0.34, 0.48}, {0.66, 0.48}, {0.5, 0.76})) v = 110.0;
  return v;
}

double shapes_at(double x, double y) {
  double v = 40.0;
  if (x >= 0.08 && x <= 0.46 && y >= 0.10 && y <= 0.42) v = 170.0;
  if (inside_triangle({x, y}, {0.55, 0.45}, {0.93, 0.45}, {0.74, 0.08})) v = 220.0;
  const double dx = x - 0.5, dy = y - 0.7;
  if (dx * dx + dy * dy <= 0.22 * 0.22) v = 120.0;
  return v;
}

}  // namespace

Image phantom(PhantomKind kind, int size) {
  if (size < 32) throw std::invalid_argument("phantom: size must be >= 32");
  const double peak = kind == PhantomKind::shepp_logan ? 1.0 : 255.0;
  Image img(size, size, peak);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const double u = (c + 0.5) / size;
      const double w = (r + 0.5) / size;
      double v = 0.0;
      switch (kind) {
        case PhantomKind::shepp_logan: v = shepp_logan_at(2.0 * u - 1.0, 1.0 - 2.0 * w); break;
        case PhantomKind::triangle: v = triangle_at(u, w); break;
        case PhantomKind::shapes: v = shapes_at(u, w); break;
      }
      img(r, c) = v;
    }
  }
  return img;
}

}  // namespace curvemg
