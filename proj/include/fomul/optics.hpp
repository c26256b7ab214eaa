#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "fomul/field.hpp"

namespace fomul {

enum class Backend { Direct, Fft };

/// Fresnel propagation over distance z (mm) by direct double sum over source pixels.
/// O(N^4); each output sample is accumulated in a fixed order.
ComplexField fresnel_propagate_direct(const ComplexField& f, double z);

/// Same discrete sum evaluated as a zero-padded (linear) FFT convolution.
ComplexField fresnel_propagate_fft(const ComplexField& f, double z);

ComplexField fresnel_propagate(const ComplexField& f, double z, Backend backend);

/// Thin lens followed by free-space propagation.
struct LensSpec {
  double distance_after = 0.0;
  /// Only |focal_length| enters the phase; the sign is carried for script bookkeeping.
  double focal_length = 0.0;
  double refractive_index = 1.0;
  double thickness = 0.0;
  /// Side of the square stop; infinity means unobstructed.
  double aperture = std::numeric_limits<double>::infinity();
  double scale_x = 1.0;
  double scale_y = 1.0;

  void validate() const;
};

/// Aperture, lens phase, propagation by distance_after, then output-plane dilation.
ComplexField apply_lens(const ComplexField& f, const LensSpec& spec,
                        Backend backend = Backend::Fft);

/// Thin-lens focal length from surface radii: 1/f = (n - 1)(1/r1 - 1/r2).
double lensmaker_focal_length(double r1, double r2, double refractive_index);

/// Distance z_i = -1 / (1/f_i - (n_mults + 1)/z_prev) at which the next lens images.
double lens_spacing(double f_i, double z_prev, int n_mults);

/// Inverse of lens_spacing: the f_i placing the image at z_i.
double focal_for_spacing(double z_i, double z_prev, int n_mults);

/// Alternating 1/0 real amplitude squares; square (0, 0) at the top-left is lit.
/// Remainder pixels go to the first and last squares.
ComplexField checkerboard(int n_squares, const GridSpec& grid);

struct CropGeometry {
  double extent = 2.0;
  int n_squares = 8;
  double refractive_index = 1.5;
};

struct ExperimentResult {
  double wavelength = 0.0;
  double focal_length = 0.0;
  double crop_width = 0.0;
  std::size_t grid = 0;
  double fidelity = 0.0;
  IntensityImage input;
  IntensityImage output;
};

/// Checkerboard -> lens(f), 2f -> crop -> lens(f), 2f -> intensity; fidelity is the
/// xcorr of the output against the point-reflected input.
ExperimentResult cropping_experiment(double wavelength, double focal_length, double crop_width,
                                     std::size_t grid, const CropGeometry& geometry = {},
                                     Backend backend = Backend::Fft);

}  // namespace fomul
