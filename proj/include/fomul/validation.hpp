#pragma once

#include "fomul/field.hpp"
#include "fomul/optics.hpp"

namespace fomul {

struct ApertureCheck {
  std::size_t grid = 128;
  double pitch = 0.001;
  /// Side of the square opening (mm).
  double aperture = 0.032;
  double wavelength = 0.0005;
  double distance = 5.0;
};

/// Fresnel field behind a uniformly lit square opening, evaluated on the grid from
/// the separable closed-aperture integral with composite Gauss-Legendre quadrature.
ComplexField aperture_fresnel_quadrature(const ApertureCheck& c, int panels = 32);

struct ApertureResult {
  double rel_l2 = 0.0;
  double fresnel_number = 0.0;
};

/// Relative L2 distance between the propagated square opening and the quadrature field.
ApertureResult validate_aperture(const ApertureCheck& c, Backend backend = Backend::Fft);

double relative_l2(const ComplexField& got, const ComplexField& want);

}  // namespace fomul
