#include <doctest.h>

#include <algorithm>
#include <random>

#include "curvemg/grid.hpp"
#include "support.hpp"

using namespace curvemg;

TEST_CASE("hierarchy dimensions") {
  const auto h = build_hierarchy(9, 9, 2);
  REQUIRE(h.size() == 2);
  CHECK(h[0].patch_side == 1);
  CHECK(h[0].count() == 81);
  CHECK(h[1].patch_side == 3);
  CHECK(h[1].rows == 3);
  CHECK(h[1].cols == 3);
  CHECK(h[1].count() == 9);

  const auto p = build_hierarchy(10, 9, 3)[2];
  CHECK(p.patch_side == 7);
  CHECK(p.rows == 2);
  CHECK(p.cols == 2);

  CHECK_THROWS(build_hierarchy(9, 9, 7));
  CHECK_THROWS(build_hierarchy(9, 9, 0));
  CHECK_THROWS(build_hierarchy(0, 9, 1));
}

TEST_CASE("patches tile the extended domain") {
  for (int m : {1, 7, 10, 33})
    for (int n : {1, 8, 15, 40})
      for (const auto& part : build_hierarchy(m, n, 4)) {
        std::vector<int> hits(static_cast<std::size_t>(part.extended_height() * part.extended_width()), 0);
        int clipped_total = 0;
        for (int i = 0; i < part.count(); ++i) {
          const PatchRect p = part.patch(i);
          for (int r = p.row0; r < p.row0 + p.rows; ++r)
            for (int c = p.col0; c < p.col0 + p.cols; ++c) ++hits[static_cast<std::size_t>(r * part.extended_width() + c)];
          clipped_total += part.clipped(i).count();
        }
        CHECK(std::all_of(hits.begin(), hits.end(), [](int k) { return k == 1; }));
        CHECK(clipped_total == m * n);
      }
}

TEST_CASE("four-colouring examples") {
  const auto two = color(make_partition(6, 6, 2));
  for (const auto& cls : two.classes) CHECK(cls.size() == 1);

  const auto row = color(make_partition(1, 5, 1));
  CHECK(row.classes[0].size() == 3);
  CHECK(row.classes[1].size() == 2);
  CHECK(row.classes[2].empty());

  const auto nine = color(make_partition(9, 9, 2));
  std::vector<std::size_t> sizes;
  for (const auto& cls : nine.classes) sizes.push_back(cls.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 2, 4});
}

TEST_CASE("four-colouring is proper on every patch grid up to 64 x 64") {
  bool ok = true;
  for (int rows = 1; rows <= 64; ++rows)
    for (int cols = 1; cols <= 64; ++cols) {
      Partition p;
      p.rows = rows;
      p.cols = cols;
      const auto cc = color(p);
      std::vector<int> col(static_cast<std::size_t>(rows * cols), -1);
      for (int k = 0; k < 4; ++k)
        for (int i : cc.classes[k]) {
          ok = ok && col[static_cast<std::size_t>(i)] == -1;
          col[static_cast<std::size_t>(i)] = k;
        }
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
          const int here = col[static_cast<std::size_t>(r * cols + c)];
          ok = ok && here >= 0;
          if (r + 1 < rows) ok = ok && here != col[static_cast<std::size_t>((r + 1) * cols + c)];
          if (c + 1 < cols) ok = ok && here != col[static_cast<std::size_t>(r * cols + c + 1)];
        }
    }
  CHECK(ok);
}

TEST_CASE("restriction examples") {
  Image f(2, 2, 255.0), u(2, 2, 255.0);
  f(0, 0) = 1;
  f(0, 1) = 2;
  f(1, 0) = 3;
  f(1, 1) = 4;
  const auto r = restrict_fidelity(f, u, {0, 0, 2, 2});
  CHECK(r.f_star == 2.5);
  CHECK(r.s == 4);
  CHECK(restrict_fidelity(f, f, {0, 0, 2, 2}).f_star == 0.0);
  Image g = f;
  for (double& v : g.data()) v += 1.75;
  CHECK(restrict_fidelity(g, f, {0, 1, 2, 1}).f_star == 1.75);
  CHECK_THROWS(restrict_fidelity(f, u, {0, 0, 0, 2}));
  CHECK_THROWS(restrict_fidelity(f, u, {1, 1, 2, 2}));
}

TEST_CASE("prolongation and its pairing with restriction") {
  const Partition part = make_partition(10, 11, 2);
  CorrectionField c{part.rows, part.cols, std::vector<double>(static_cast<std::size_t>(part.count()), 3.5)};
  const Image all = prolongate(c, part, 10, 11);
  for (double v : all.data()) CHECK(v == 3.5);

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (double& v : c.values) v = dist(rng);
  const Image img = prolongate(c, part, 10, 11);
  double total = 0.0, weighted = 0.0;
  for (double v : img.data()) total += v;
  const Image zero(11, 10, 255.0);
  for (int i = 0; i < part.count(); ++i) {
    const auto rs = restrict_fidelity(img, zero, part.clipped(i));
    CHECK(rs.f_star == doctest::Approx(c.values[static_cast<std::size_t>(i)]).epsilon(1e-15));
    weighted += c.values[static_cast<std::size_t>(i)] * rs.s;
  }
  CHECK(total == doctest::Approx(weighted));

  CorrectionField single{part.rows, part.cols, std::vector<double>(static_cast<std::size_t>(part.count()), 0.0)};
  single.values[5] = 1.0;
  const Image one = prolongate(single, part, 10, 11);
  const PatchRect p = part.clipped(5);
  for (int r = 0; r < 10; ++r)
    for (int col = 0; col < 11; ++col) {
      const bool inside = r >= p.row0 && r < p.row0 + p.rows && col >= p.col0 && col < p.col0 + p.cols;
      CHECK(one(r, col) == (inside ? 1.0 : 0.0));
    }
  CHECK_THROWS(prolongate(CorrectionField{1, 1, {0.0}}, part, 10, 11));
  CHECK_THROWS(prolongate(c, part, 12, 11));
}
