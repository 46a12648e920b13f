#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "lbreg/grid.hpp"
#include "lbreg/grid_io.hpp"
#include "oracles.hpp"

using namespace lbreg;

namespace {

Grid row(std::vector<double> v) {
  const std::size_t n = v.size();
  return Grid(1, n, std::move(v));
}

}  // namespace

TEST_CASE("grid construction enforces shape and finiteness") {
  CHECK_THROWS_AS(Grid(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(Grid(2, 2, std::vector<double>{1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1, 2, std::vector<double>{1, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1, 1, std::numeric_limits<double>::infinity()), std::invalid_argument);

  Grid g(2, 3, std::vector<double>{1, 2, 3, 4, 5, 6});
  CHECK(g(1, 0) == 4);
  CHECK(g.shape() == Shape{2, 3});
}

TEST_CASE("inner") {
  CHECK(inner(row({1, 2}), row({3, 4})) == 11);
  CHECK(inner(row({7, -3}), row({0, 0})) == 0);
  CHECK(inner(row({3}), row({3})) == 9);
  CHECK_THROWS_AS(inner(Grid(2, 2), Grid(1, 4)), ShapeError);
}

TEST_CASE("norm_sq") {
  CHECK(norm_sq(row({0, 0, 0})) == 0);
  CHECK(norm_sq(row({3, 4})) == 25);
  std::mt19937_64 rng(1);
  const Grid a = oracle::random_grid(5, 7, rng);
  CHECK(norm_sq(a) == inner(a, a));
}

TEST_CASE("axpy") {
  CHECK(axpy(1.0, row({1, 1}), row({2, 3})) == row({3, 4}));
  const Grid y = row({0.5, -2});
  CHECK(axpy(0.0, row({9, 9}), y) == y);
  // dual update p - 1.5 grad
  CHECK(axpy(-1.5, row({2, -4}), row({1, 1})) == row({-2, 7}));
  CHECK_THROWS_AS(axpy(1.0, Grid(2, 2), Grid(2, 3)), ShapeError);
}

TEST_CASE("inner product properties on random grids") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t r = 1 + rng() % 6;
    const std::size_t c = 1 + rng() % 6;
    const Grid a = oracle::random_grid(r, c, rng);
    const Grid b = oracle::random_grid(r, c, rng);
    const Grid x = oracle::random_grid(r, c, rng);
    const double s = coef(rng);
    const double t = coef(rng);

    const double ab = inner(a, b);
    CHECK(ab == doctest::Approx(inner(b, a)).epsilon(1e-12));
    const double lhs = inner(axpy(s, a, t * x), b);
    const double rhs = s * ab + t * inner(x, b);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs) + std::abs(s * ab)));
    CHECK(ab * ab <= norm_sq(a) * norm_sq(b) * (1.0 + 1e-12));

    const Grid nested = axpy(s, x, axpy(t, x, a));
    const Grid merged = axpy(s + t, x, a);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(std::abs(nested[i] - merged[i]) <= 1e-14 * (1.0 + std::abs(merged[i])) * 8);
    }
  }
}

TEST_CASE("grid csv round trip is exact") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const Grid g = oracle::random_grid(1 + rng() % 5, 1 + rng() % 5, rng, -1e6, 1e6);
    std::stringstream ss;
    write_grid_csv(ss, g);
    CHECK(read_grid_csv(ss) == g);
  }
}

TEST_CASE("grid csv format and errors") {
  std::stringstream ss;
  write_grid_csv(ss, Grid(2, 2, std::vector<double>{1, 0.5, -2, 3}));
  CHECK(ss.str() == "2,2\n1,0.5\n-2,3\n");

  std::stringstream short_rows("2,2\n1,2\n");
  CHECK_THROWS_AS(read_grid_csv(short_rows), FormatError);
  std::stringstream bad_count("1,3\n1,2\n");
  CHECK_THROWS_AS(read_grid_csv(bad_count), FormatError);
  std::stringstream bad_value("1,2\n1,abc\n");
  CHECK_THROWS_AS(read_grid_csv(bad_value), FormatError);
  std::stringstream bad_header("12\n");
  CHECK_THROWS_AS(read_grid_csv(bad_header), FormatError);
  std::stringstream nan_value("1,1\nnan\n");
  CHECK_THROWS_AS(read_grid_csv(nan_value), FormatError);
}

TEST_CASE("pgm rendering with sidecar") {
  const auto dir = std::filesystem::temp_directory_path() / "lbreg_test_pgm";
  std::filesystem::create_directories(dir);
  const Grid g(2, 3, std::vector<double>{-1, 0, 1, 2, 3, 4});
  const auto scaling = write_pgm(dir / "g.pgm", g);
  CHECK(scaling.min == -1);
  CHECK(scaling.max == 4);

  std::ifstream in(dir / "g.pgm", std::ios::binary);
  std::string magic;
  std::size_t w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  in.get();
  CHECK(magic == "P5");
  CHECK(w == 3);
  CHECK(h == 2);
  CHECK(maxval == 255);
  std::vector<unsigned char> px(6);
  in.read(reinterpret_cast<char*>(px.data()), 6);
  CHECK(px.front() == 0);
  CHECK(px.back() == 255);

  std::ifstream meta(dir / "g.pgm.meta");
  std::string text((std::istreambuf_iterator<char>(meta)), std::istreambuf_iterator<char>());
  CHECK(text == "min -1\nmax 4\nrows 2\ncols 3\n");
}
