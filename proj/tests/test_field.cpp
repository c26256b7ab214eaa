#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "fomul/error.hpp"
#include "fomul/field.hpp"
#include "fomul/image_io.hpp"
#include "support.hpp"

using namespace fomul;
using fomul::test::Rng;

namespace {

const GridSpec kGrid{16, 0.001, 0.0002};

ComplexField filled(const GridSpec& g, Complex v) {
  ComplexField f(g);
  for (Complex& s : f.samples()) s = v;
  return f;
}

/// Independent pixel loop: normalized center of (i, j) is ((j - (N-1)/2) / N, ((N-1)/2 - i) / N).
bool reference_inside(std::size_t n, std::size_t i, std::size_t j, double x0, double y0, double x1,
                      double y1) {
  const double half = (static_cast<double>(n) - 1.0) / 2.0;
  const double x = (static_cast<double>(j) - half) / static_cast<double>(n);
  const double y = (half - static_cast<double>(i)) / static_cast<double>(n);
  return x >= std::min(x0, x1) && x <= std::max(x0, x1) && y >= std::min(y0, y1) &&
         y <= std::max(y0, y1);
}

}  // namespace

TEST_SUITE("field") {
  TEST_CASE("grid coordinates are centered with y up") {
    const GridSpec g{4, 0.5, 0.001};
    CHECK(g.x(0) == doctest::Approx(-0.75));
    CHECK(g.x(3) == doctest::Approx(0.75));
    CHECK(g.y(0) == doctest::Approx(0.75));
    CHECK(g.y(3) == doctest::Approx(-0.75));
    CHECK(g.extent() == doctest::Approx(2.0));
  }

  TEST_CASE("invalid grids are rejected") {
    CHECK_THROWS_AS(ComplexField(GridSpec{1, 0.001, 0.0002}), ConfigError);
    CHECK_THROWS_AS(ComplexField(GridSpec{8, 0.0, 0.0002}), ConfigError);
    CHECK_THROWS_AS(ComplexField(GridSpec{8, 0.001, -1.0}), ConfigError);
    CHECK_THROWS_AS(ComplexField(kGrid, std::vector<Complex>(3)), ConfigError);
  }

  TEST_CASE("pointwise_mul examples") {
    Rng rng(1);
    const ComplexField f = test::random_field(rng, kGrid);
    CHECK(test::max_abs_diff(pointwise_mul(filled(kGrid, 1.0), f), f) == 0.0);

    const Complex i(0.0, 1.0);
    const ComplexField sq = pointwise_mul(filled(kGrid, i), filled(kGrid, i));
    for (const Complex& s : sq.samples()) CHECK(s == Complex(-1.0, 0.0));

    ComplexField p(kGrid);
    p(3, 5) = 3.0;
    const ComplexField p2 = pointwise_mul(p, p);
    CHECK(p2(3, 5) == Complex(9.0, 0.0));
    CHECK(test::max_abs(p2) == 9.0);
  }

  TEST_CASE("pointwise ops reject mismatched grids") {
    const ComplexField a(kGrid);
    CHECK_THROWS_AS(pointwise_mul(a, ComplexField(GridSpec{8, 0.001, 0.0002})), ConfigError);
    CHECK_THROWS_AS(pointwise_add(a, ComplexField(GridSpec{16, 0.002, 0.0002})), ConfigError);
    CHECK_THROWS_AS(pointwise_add(a, ComplexField(GridSpec{16, 0.001, 0.0005})), ConfigError);
  }

  TEST_CASE("pointwise_add examples") {
    Rng rng(2);
    const ComplexField f = test::random_field(rng, kGrid);
    CHECK(test::max_abs_diff(pointwise_add(f, ComplexField(kGrid)), f) == 0.0);
    CHECK(test::max_abs(pointwise_add(f, scale(f, -1.0))) == 0.0);

    const double A = 0.7;
    const ComplexField sum =
        pointwise_add(filled(kGrid, std::polar(A, 0.3)), filled(kGrid, std::polar(A, 0.3 + M_PI / 2)));
    for (const Complex& s : sum.samples()) CHECK(std::abs(s) == doctest::Approx(A * std::sqrt(2.0)));
  }

  TEST_CASE("pointwise_add is commutative and associative") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      const GridSpec g{2 + rng.below(20), 0.001, 0.0002};
      const auto a = test::random_field(rng, g), b = test::random_field(rng, g),
                 c = test::random_field(rng, g);
      CHECK(test::max_abs_diff(pointwise_add(a, b), pointwise_add(b, a)) == 0.0);
      const auto l = pointwise_add(pointwise_add(a, b), c);
      const auto r = pointwise_add(a, pointwise_add(b, c));
      CHECK(test::max_abs_diff(l, r) <= 1e-12 * test::max_abs(l));
    }
  }

  TEST_CASE("mask_rect full frame keeps everything") {
    Rng rng(4);
    const auto f = test::random_field(rng, kGrid);
    CHECK(test::max_abs_diff(mask_rect(f, {-0.5, -0.5}, {0.5, 0.5}), f) == 0.0);
  }

  TEST_CASE("mask_rect lower-left region for the low-digit split") {
    const GridSpec g{1005, 0.001, 0.0002};
    const ComplexField ones = filled(g, 1.0);
    const ComplexField m = mask_rect(ones, {-0.5, 0.164179}, {0.164179, -0.5});
    const double b = 0.164179;
    for (std::size_t i = 0; i < g.size; i += 7)
      for (std::size_t j = 0; j < g.size; j += 7)
        CHECK(std::abs(m(i, j)) == (reference_inside(g.size, i, j, -0.5, b, b, -0.5) ? 1.0 : 0.0));
    // Lower-left corner kept, upper-right dropped.
    CHECK(m(g.size - 1, 0) == Complex(1.0));
    CHECK(m(0, g.size - 1) == Complex(0.0));
  }

  TEST_CASE("mask_rect with a degenerate column matches the pixel loop") {
    const std::size_t n = 9;
    const GridSpec g{n, 0.001, 0.0002};
    const ComplexField ones = filled(g, 1.0);
    const double c = 2.0 / 9.0;  // center of column 6
    const ComplexField m = mask_rect(ones, {c, -0.5}, {c, 0.5});
    std::size_t kept = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const bool in = reference_inside(n, i, j, c, -0.5, c, 0.5);
        CHECK(std::abs(m(i, j)) == (in ? 1.0 : 0.0));
        kept += in;
      }
    CHECK(kept == n);
    const ComplexField point = mask_rect(ones, {c, c}, {c, c});
    CHECK(test::max_abs(point) == 1.0);
    CHECK(point(2, 6) == Complex(1.0));
  }

  TEST_CASE("mask_rect rejects out-of-range corners") {
    CHECK_THROWS_AS(mask_rect(ComplexField(kGrid), {-0.6, 0.0}, {0.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(mask_rect(ComplexField(kGrid), {0.0, 0.0}, {0.0, 0.51}), ConfigError);
  }

  TEST_CASE("mask_rect is idempotent and order-free") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const GridSpec g{2 + rng.below(30), 0.001, 0.0002};
      const auto f = test::random_field(rng, g);
      const NormPoint c1{rng.unit() - 0.5, rng.unit() - 0.5}, c2{rng.unit() - 0.5, rng.unit() - 0.5};
      const auto once = mask_rect(f, c1, c2);
      CHECK(test::max_abs_diff(mask_rect(once, c1, c2), once) == 0.0);
      CHECK(test::max_abs_diff(mask_rect(f, c2, c1), once) == 0.0);
      CHECK(test::max_abs_diff(mask_rect(f, {c1.x, c2.y}, {c2.x, c1.y}), once) == 0.0);
    }
  }

  TEST_CASE("crop examples") {
    Rng rng(6);
    const auto f = test::random_field(rng, kGrid);
    CHECK(test::max_abs_diff(crop(f, kGrid.extent()), f) == 0.0);
    const auto half = crop(f, kGrid.extent() / 2);
    for (std::size_t i = 0; i < kGrid.size; ++i)
      for (std::size_t j = 0; j < kGrid.size; ++j) {
        const bool inner = i >= 4 && i < 12 && j >= 4 && j < 12;
        CHECK(half(i, j) == (inner ? f(i, j) : Complex{}));
      }
    CHECK_THROWS_AS(crop(f, 0.0), ConfigError);
    CHECK_THROWS_AS(crop(f, -1.0), ConfigError);
  }

  TEST_CASE("crop composes to the narrower crop") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      const GridSpec g{2 + rng.below(30), 0.001, 0.0002};
      const auto f = test::random_field(rng, g);
      const double w1 = 1e-4 + rng.unit() * g.extent() * 1.2, w2 = 1e-4 + rng.unit() * g.extent() * 1.2;
      CHECK(test::max_abs_diff(crop(crop(f, w1), w2), crop(f, std::min(w1, w2))) == 0.0);
    }
  }

  TEST_CASE("scale, intensity and xcorr") {
    Rng rng(8);
    const auto f = test::random_field(rng, kGrid);
    CHECK(test::max_abs_diff(scale(f, 1.0), f) == 0.0);
    const IntensityImage img = intensity(f);
    for (std::size_t i = 0; i < img.samples().size(); ++i)
      CHECK(img.samples()[i] == std::norm(f.samples()[i]));
    CHECK(xcorr(img, img) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(xcorr(img, intensity(scale(f, std::sqrt(2.0)))) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(scale(f, std::nan("")), ConfigError);
  }

  TEST_CASE("xcorr of a constant image is undefined") {
    const IntensityImage flat = intensity(filled(kGrid, 1.0));
    Rng rng(9);
    CHECK_THROWS_AS(xcorr(flat, intensity(test::random_field(rng, kGrid))), MetricError);
    CHECK_THROWS_AS(xcorr(flat, intensity(ComplexField(GridSpec{4, 0.001, 0.0002}))), ConfigError);
  }

  TEST_CASE("intensity scales with the squared gain") {
    Rng rng(10);
    for (int trial = 0; trial < 50; ++trial) {
      const GridSpec g{2 + rng.below(20), 0.001, 0.0002};
      const auto f = test::random_field(rng, g);
      const double gain = 10.0 * rng.symmetric();
      const IntensityImage a = intensity(scale(f, gain)), b = intensity(f);
      for (std::size_t i = 0; i < a.samples().size(); ++i)
        CHECK(a.samples()[i] == doctest::Approx(gain * gain * b.samples()[i]).epsilon(1e-12));
    }
  }

  TEST_CASE("mirror reflects through the center") {
    std::vector<double> v{1, 2, 3, 4};
    const IntensityImage m = mirror(IntensityImage(2, 1.0, v));
    CHECK(m(0, 0) == 4);
    CHECK(m(1, 1) == 1);
    CHECK(m(0, 1) == 3);
  }

  TEST_CASE("PGM and float sidecar") {
    const auto dir = std::filesystem::temp_directory_path() / "fomul_field_test";
    std::filesystem::create_directories(dir);
    const IntensityImage img(2, 0.001, {0.0, 1.0, 2.0, 4.0});
    write_intensity(img, dir / "x.pgm");

    std::ifstream in(dir / "x.pgm", std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::string header = "P5\n2 2\n65535\n";
    REQUIRE(bytes.size() == header.size() + 8);
    CHECK(bytes.substr(0, header.size()) == header);
    auto px = [&](int k) {
      return (static_cast<unsigned char>(bytes[header.size() + 2 * k]) << 8) |
             static_cast<unsigned char>(bytes[header.size() + 2 * k + 1]);
    };
    CHECK(px(0) == 0);
    CHECK(px(1) == 16384);  // round(65535 / 4)
    CHECK(px(2) == 32768);  // round(65535 / 2)
    CHECK(px(3) == 65535);

    CHECK(std::filesystem::file_size(sidecar_path(dir / "x.pgm")) == 32);
    const IntensityImage back = read_sidecar(sidecar_path(dir / "x.pgm"), 2, 0.001);
    for (std::size_t i = 0; i < 4; ++i) CHECK(back.samples()[i] == img.samples()[i]);
    std::filesystem::remove_all(dir);
  }
}
