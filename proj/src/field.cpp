#include "fomul/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fomul/error.hpp"

namespace fomul {

double GridSpec::x(std::size_t col) const {
  return (static_cast<double>(col) - 0.5 * static_cast<double>(size - 1)) * pitch;
}

double GridSpec::y(std::size_t row) const {
  return (0.5 * static_cast<double>(size - 1) - static_cast<double>(row)) * pitch;
}

void GridSpec::validate() const {
  if (size < 2) throw ConfigError("grid size must be at least 2");
  if (!(pitch > 0.0) || !std::isfinite(pitch)) throw ConfigError("pixel pitch must be positive");
  if (!(wavelength > 0.0) || !std::isfinite(wavelength))
    throw ConfigError("wavelength must be positive");
}

ComplexField::ComplexField(const GridSpec& grid) : grid_(grid) {
  grid_.validate();
  data_.assign(grid_.size * grid_.size, Complex{});
}

ComplexField::ComplexField(const GridSpec& grid, std::vector<Complex> samples)
    : grid_(grid), data_(std::move(samples)) {
  grid_.validate();
  if (data_.size() != grid_.size * grid_.size)
    throw ConfigError("sample count does not match grid size");
}

void ComplexField::check_finite() const {
  for (const Complex& c : data_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw MetricError("field contains non-finite samples");
}

IntensityImage::IntensityImage(std::size_t size, double pitch, std::vector<double> samples)
    : size_(size), pitch_(pitch), data_(std::move(samples)) {
  if (data_.size() != size_ * size_) throw ConfigError("sample count does not match image size");
}

namespace {

void require_compatible(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid() == b.grid()))
    throw ConfigError("fields differ in grid size, pitch or wavelength");
}

template <typename Fn>
ComplexField transform_rows(const ComplexField& src, Fn fn) {
  ComplexField out(src.grid());
  const auto n = static_cast<std::ptrdiff_t>(src.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    for (std::ptrdiff_t j = 0; j < n; ++j) out(i, j) = fn(i, j);
  return out;
}

}  // namespace

ComplexField pointwise_mul(const ComplexField& a, const ComplexField& b) {
  require_compatible(a, b);
  return transform_rows(a, [&](std::size_t i, std::size_t j) { return a(i, j) * b(i, j); });
}

ComplexField pointwise_add(const ComplexField& a, const ComplexField& b) {
  require_compatible(a, b);
  return transform_rows(a, [&](std::size_t i, std::size_t j) { return a(i, j) + b(i, j); });
}

ComplexField mask_rect(const ComplexField& f, NormPoint c1, NormPoint c2) {
  for (double v : {c1.x, c1.y, c2.x, c2.y})
    if (!(v >= -0.5 && v <= 0.5)) throw ConfigError("mask corner outside [-0.5, 0.5]");
  const double x_lo = std::min(c1.x, c2.x), x_hi = std::max(c1.x, c2.x);
  const double y_lo = std::min(c1.y, c2.y), y_hi = std::max(c1.y, c2.y);
  const double n = static_cast<double>(f.size());
  const double half = 0.5 * (n - 1.0);
  return transform_rows(f, [&](std::size_t i, std::size_t j) {
    const double x = (static_cast<double>(j) - half) / n;
    const double y = (half - static_cast<double>(i)) / n;
    const bool keep = x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi;
    return keep ? f(i, j) : Complex{};
  });
}

ComplexField crop(const ComplexField& f, double width) {
  if (!(width > 0.0)) throw ConfigError("crop width must be positive");
  const GridSpec& g = f.grid();
  const double half = 0.5 * width;
  return transform_rows(f, [&](std::size_t i, std::size_t j) {
    const bool keep = std::abs(g.x(j)) <= half && std::abs(g.y(i)) <= half;
    return keep ? f(i, j) : Complex{};
  });
}

ComplexField scale(const ComplexField& f, double gain) {
  if (!std::isfinite(gain)) throw ConfigError("gain must be finite");
  return transform_rows(f, [&](std::size_t i, std::size_t j) { return f(i, j) * gain; });
}

IntensityImage intensity(const ComplexField& f) {
  std::vector<double> out(f.samples().size());
  const auto src = f.samples();
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = std::norm(src[i]);
  return IntensityImage(f.size(), f.grid().pitch, std::move(out));
}

double xcorr(const IntensityImage& a, const IntensityImage& b) {
  if (a.size() != b.size()) throw ConfigError("xcorr images differ in size");
  const auto sa = a.samples(), sb = b.samples();
  const double count = static_cast<double>(sa.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    ma += sa[i];
    mb += sb[i];
  }
  ma /= count;
  mb /= count;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const double da = sa[i] - ma, db = sb[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0.0 || sbb <= 0.0) throw MetricError("xcorr of a zero-variance image");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

IntensityImage mirror(const IntensityImage& img) {
  const std::size_t n = img.size();
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = img(n - 1 - i, n - 1 - j);
  return IntensityImage(n, img.pitch(), std::move(out));
}

}  // namespace fomul
