#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "curvemg/tangent_planes.hpp"
#include "support.hpp"

using namespace curvemg;

namespace {

// Plane z = A + B row + C col through the three stencil points, solved by
// Cramer's rule; the signed distance is the vertical gap times the cosine.
double oracle_distance(const Image& u, int row, int col, const TangentPlane& p) {
  const Offset pts[3] = {p.x, p.y, p.z};
  double m[3][3], z[3];
  for (int i = 0; i < 3; ++i) {
    m[i][0] = 1.0;
    m[i][1] = pts[i].row;
    m[i][2] = pts[i].col;
    z[i] = u(row + pts[i].row, col + pts[i].col);
  }
  auto det = [](double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double d0 = det(m);
  double coef[3];
  for (int k = 0; k < 3; ++k) {
    double mk[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) mk[i][j] = j == k ? z[i] : m[i][j];
    coef[k] = det(mk) / d0;
  }
  const double gap = coef[0] - u(row, col);
  return gap / std::sqrt(1.0 + coef[1] * coef[1] + coef[2] * coef[2]);
}

// Closed form for the plane through the left, right and upper neighbours.
double closed_form_wen(const Image& u) {
  const double w = u(1, 0), e = u(1, 2), n = u(0, 1), o = u(1, 1);
  return (w + e - 2.0 * o) / std::sqrt((w + e - 2.0 * n) * (w + e - 2.0 * n) + (e - w) * (e - w) + 4.0);
}

Image paraboloid(int side, double a) {
  Image img(side, side, 255.0);
  const int m = side / 2;
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) img(r, c) = a * ((r - m) * (r - m) + (c - m) * (c - m));
  return img;
}

}  // namespace

TEST_CASE("plane sets: counts, pairing and geometry") {
  CHECK(plane_set(1).count() == 8);
  CHECK(plane_set(2).count() == 16);
  CHECK(plane_set(3).count() == 32);
  CHECK_THROWS_AS(plane_set(0), std::out_of_range);
  CHECK_THROWS_AS(plane_set(kMaxLayer + 1), std::out_of_range);

  for (int j = 1; j <= kMaxLayer; ++j) {
    const auto& set = plane_set(j);
    const int r = 1 << (j - 1);
    CHECK(set.count() == (std::size_t{1} << (j + 2)));
    CHECK(set.radius == r);
    std::set<std::tuple<int, int, int, int, int, int>> all;
    for (const auto& p : set.planes) all.insert({p.x.row, p.x.col, p.y.row, p.y.col, p.z.row, p.z.col});
    CHECK(all.size() == set.count());
    for (const auto& p : set.planes) {
      for (Offset o : {p.x, p.y, p.z}) {
        CHECK_FALSE((o.row == 0 && o.col == 0));
        CHECK(std::max(std::abs(o.row), std::abs(o.col)) <= r);
      }
      const int cross = (p.y.row - p.x.row) * (p.z.col - p.x.col) - (p.y.col - p.x.col) * (p.z.row - p.x.row);
      CHECK(cross != 0);
      // The point reflection of every plane is in the set (x and y swap roles).
      const bool mirrored = all.count({p.y.row, p.y.col, p.x.row, p.x.col, -p.z.row, -p.z.col}) +
                                all.count({p.x.row, p.x.col, p.y.row, p.y.col, -p.z.row, -p.z.col}) > 0;
      CHECK(mirrored);
    }
    // The first eight planes are the layer-1 planes scaled by r.
    for (std::size_t i = 0; i < 8; ++i) {
      const auto& a = plane_set(1).planes[i];
      const auto& b = set.planes[i];
      CHECK(b.x == Offset{a.x.row * r, a.x.col * r});
      CHECK(b.y == Offset{a.y.row * r, a.y.col * r});
      CHECK(b.z == Offset{a.z.row * r, a.z.col * r});
    }
  }
}

TEST_CASE("plane_distance matches the closed form and an independent oracle") {
  std::mt19937_64 rng(21);
  const TangentPlane wen = plane_set(1).planes[0];
  REQUIRE(wen.x == Offset{0, -1});
  REQUIRE(wen.y == Offset{0, 1});
  REQUIRE(wen.z == Offset{-1, 0});
  for (int i = 0; i < 1000; ++i) {
    const Image u = testing::random_image(3, 3, rng, -3.0, 3.0);
    CHECK(std::abs(plane_distance(u, 1, 1, wen) - closed_form_wen(u)) <= 1e-12);
  }
  for (int j = 1; j <= 3; ++j) {
    const int side = 2 * (1 << (j - 1)) + 1, m = side / 2;
    for (int i = 0; i < 50; ++i) {
      const Image u = testing::random_image(side, side, rng);
      for (const auto& p : plane_set(j).planes)
        CHECK(plane_distance(u, m, m, p) == doctest::Approx(oracle_distance(u, m, m, p)).epsilon(1e-10));
    }
  }
}

TEST_CASE("plane_distance: worked example, flatness and odd symmetry") {
  Image u(3, 3, 255.0);
  u(1, 1) = 1.0;
  CHECK(plane_distance(u, 1, 1, plane_set(1).planes[0]) == doctest::Approx(-1.0).epsilon(1e-15));

  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  for (int j = 1; j <= kMaxLayer; ++j) {
    const int side = 2 * (1 << (j - 1)) + 1, m = side / 2;
    const Image a = testing::affine_image(side, side, coef(rng), coef(rng), coef(rng));
    for (double d : distances(a, m, m, j)) CHECK(std::abs(d) <= 1e-12);
    const Image r = testing::random_image(side, side, rng);
    Image neg = r;
    for (double& v : neg.data()) v = -v;
    const auto dr = distances(r, m, m, j), dn = distances(neg, m, m, j);
    for (std::size_t i = 0; i < dr.size(); ++i) CHECK(dn[i] == -dr[i]);
  }
  // Integer-valued affine images are flat to the last bit.
  const Image ramp = testing::affine_image(3, 3, 2.0, -3.0, 7.0);
  for (double d : distances(ramp, 1, 1, 1)) CHECK(d == 0.0);
}

TEST_CASE("mean_correction and normal curvatures") {
  CHECK(mean_correction(std::vector<double>(8, 0.0)) == 0.0);
  CHECK(mean_correction(std::vector<double>{1, -1, 1, -1, 1, -1, 1, -1}) == 0.0);
  CHECK(mean_correction(std::vector<double>{-1, 0, 0, 0, 0, 0, 0, 0}) == -0.125);
  CHECK_THROWS(mean_correction(std::vector<double>{}));

  const auto& set = plane_set(1);
  std::vector<double> d(8, 0.5);
  const auto kappa = normal_curvatures(d, set);
  CHECK(kappa[0] == 0.5);   // axis neighbour, ds^2 = 1
  CHECK(kappa[4] == 0.25);  // diagonal neighbour, ds^2 = 2
  CHECK(arc_length_sq(plane_set(3).planes[0]) == 16.0);
  CHECK(arc_length_sq(plane_set(3).planes[4]) == 32.0);
  CHECK_THROWS(normal_curvatures(std::vector<double>(7, 0.0), set));

  std::mt19937_64 rng(23);
  const Image u = testing::random_image(5, 5, rng);
  const auto dv = distances(u, 2, 2, 2);
  double sum = 0.0;
  for (double x : dv) sum += x;
  CHECK(mean_distance(u, 2, 2, 2) == doctest::Approx(sum / 16.0).epsilon(1e-14));
}

TEST_CASE("curvature estimates: flat, bump and saddle") {
  const Image flat(3, 3, 255.0, 4.0);
  const auto f = curvature_estimate(flat, 1, 1, 1);
  CHECK(f.mean_h == 0.0);
  CHECK(f.gauss_k == 0.0);

  const auto bump = curvature_estimate(paraboloid(5, 0.2), 2, 2, 1);
  CHECK(bump.kappa_min > 0.0);
  CHECK(bump.kappa_max >= bump.kappa_min);
  CHECK(bump.gauss_k > 0.0);
  CHECK(bump.mean_h > 0.0);

  Image saddle(5, 5, 255.0);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) saddle(r, c) = 0.3 * (r - 2) * (c - 2);
  const auto s = curvature_estimate(saddle, 2, 2, 1);
  CHECK(s.kappa_min < 0.0);
  CHECK(s.kappa_max > 0.0);
  CHECK(s.gauss_k <= 0.0);

  // The star plane carries the principal curvature closer to zero.
  std::mt19937_64 rng(24);
  for (int i = 0; i < 200; ++i) {
    const Image u = testing::random_image(3, 3, rng);
    const auto e = curvature_estimate(u, 1, 1, 1);
    const auto kappa = normal_curvatures(distances(u, 1, 1, 1), plane_set(1));
    CHECK(e.kappa_min <= e.kappa_max);
    CHECK(std::abs(kappa[e.star_index]) == std::min(std::abs(e.kappa_min), std::abs(e.kappa_max)));
  }
}

TEST_CASE("gaussian correction lands the centre on the star plane") {
  CHECK(gaussian_correction(Image(3, 3, 255.0, 9.0), 1, 1, 1) == 0.0);
  std::mt19937_64 rng(25);
  int not_larger = 0;
  for (int i = 0; i < 1000; ++i) {
    const Image u = testing::random_image(3, 3, rng);
    const auto before = curvature_estimate(u, 1, 1, 1);
    Image v = u;
    v(1, 1) += gaussian_correction(u, 1, 1, 1);
    const auto& star = plane_set(1).planes[before.star_index];
    CHECK(std::abs(plane_distance(v, 1, 1, star)) <= 1e-12);
    const auto after = curvature_estimate(v, 1, 1, 1);
    if (std::abs(after.gauss_k) <= std::abs(before.gauss_k)) ++not_larger;
    // star_distance is the perpendicular distance to the same plane.
    CHECK(star_distance(u, 1, 1, 1) == plane_distance(u, 1, 1, star));
  }
  CHECK(not_larger == 1000);
}

TEST_CASE("mean correction reduces |H| on most smooth patches") {
  std::mt19937_64 rng(26);
  int ok = 0;
  for (int i = 0; i < 1000; ++i) {
    Image u = testing::smooth_patch(3, rng);
    const double h0 = std::abs(curvature_estimate(u, 1, 1, 1).mean_h);
    u(1, 1) += mean_distance(u, 1, 1, 1);
    if (std::abs(curvature_estimate(u, 1, 1, 1).mean_h) <= h0) ++ok;
  }
  CHECK(ok >= 900);
}

TEST_CASE("curvature profile agrees with re-evaluation") {
  std::mt19937_64 rng(27);
  for (int i = 0; i < 100; ++i) {
    const Image u = testing::random_image(5, 5, rng);
    for (int j : {1, 2}) {
      const CurvatureProfile prof(u, 2, 2, j);
      for (double shift : {-0.7, 0.0, 0.3}) {
        Image v = u;
        v(2, 2) += shift;
        const auto direct = normal_curvatures(distances(v, 2, 2, j), plane_set(j));
        for (std::size_t l = 0; l < prof.count(); ++l)
          CHECK(prof.kappa(l, shift) == doctest::Approx(direct[l]).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("energy examples") {
  const double alpha = 0.06;
  const Image c(12, 9, 255.0, 42.0);
  CHECK(energy(c, c, alpha, CurvatureMode::mean) == 0.0);
  const Image a = testing::affine_image(9, 12, 0.5, -2.0, 10.0);
  for (auto mode : {CurvatureMode::mean, CurvatureMode::gaussian})
    CHECK(energy(a, a, alpha, mode) == doctest::Approx(0.0).epsilon(1e-12));
  Image shifted = c;
  for (double& v : shifted.data()) v += 1.0;
  CHECK(energy(shifted, c, alpha, CurvatureMode::mean) == doctest::Approx(alpha / 2 * 12 * 9));
  CHECK_THROWS(energy(c, Image(3, 3, 255.0), alpha, CurvatureMode::mean));
  CHECK_THROWS(energy(c, c, 0.0, CurvatureMode::mean));
  CHECK(parse_curvature_mode("gaussian") == CurvatureMode::gaussian);
  CHECK_THROWS(parse_curvature_mode("total"));
}
