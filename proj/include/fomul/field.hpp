#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fomul {

using Complex = std::complex<double>;

/// Square sampling grid. Lengths are in millimetres.
struct GridSpec {
  std::size_t size = 0;
  double pitch = 0.001;
  double wavelength = 0.0002;

  double extent() const { return static_cast<double>(size) * pitch; }
  /// Physical x of column j (centered).
  double x(std::size_t col) const;
  /// Physical y of row i (centered, increasing upward).
  double y(std::size_t row) const;
  void validate() const;
  bool operator==(const GridSpec&) const = default;
};

/// N x N complex amplitudes, row-major.
class ComplexField {
 public:
  explicit ComplexField(const GridSpec& grid);
  ComplexField(const GridSpec& grid, std::vector<Complex> samples);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return grid_.size; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * grid_.size + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * grid_.size + col];
  }
  std::span<Complex> samples() { return data_; }
  std::span<const Complex> samples() const { return data_; }

  /// Throws MetricError if any sample is NaN or infinite.
  void check_finite() const;

 private:
  GridSpec grid_;
  std::vector<Complex> data_;
};

class IntensityImage {
 public:
  IntensityImage() = default;
  IntensityImage(std::size_t size, double pitch, std::vector<double> samples);

  std::size_t size() const { return size_; }
  double pitch() const { return pitch_; }
  double operator()(std::size_t row, std::size_t col) const { return data_[row * size_ + col]; }
  std::span<const double> samples() const { return data_; }

 private:
  std::size_t size_ = 0;
  double pitch_ = 0.0;
  std::vector<double> data_;
};

/// Normalized coordinate: fraction of the grid extent from the center, in [-0.5, 0.5].
struct NormPoint {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const NormPoint&) const = default;
};

ComplexField pointwise_mul(const ComplexField& a, const ComplexField& b);
ComplexField pointwise_add(const ComplexField& a, const ComplexField& b);

/// Keeps pixels whose normalized center lies in the closed box spanned by the corners.
ComplexField mask_rect(const ComplexField& f, NormPoint corner1, NormPoint corner2);

/// Zeroes everything outside the centered width x width square. Widths beyond the
/// extent leave the field unchanged.
ComplexField crop(const ComplexField& f, double width);

ComplexField scale(const ComplexField& f, double gain);
IntensityImage intensity(const ComplexField& f);

/// Normalized cross-correlation of mean-removed images.
double xcorr(const IntensityImage& a, const IntensityImage& b);

/// Point reflection through the grid center.
IntensityImage mirror(const IntensityImage& img);

}  // namespace fomul
