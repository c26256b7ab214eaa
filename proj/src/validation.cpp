#include "fomul/validation.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "fomul/error.hpp"

namespace fomul {

ComplexField aperture_fresnel_quadrature(const ApertureCheck& c, int panels) {
  const GridSpec g{c.grid, c.pitch, c.wavelength};
  g.validate();
  if (!(c.aperture > 0.0) || c.distance == 0.0 || panels < 1)
    throw ConfigError("invalid aperture check parameters");
  const double k = 2.0 * std::numbers::pi / c.wavelength;
  const double half = 0.5 * c.aperture;
  const double width = c.aperture / panels;

  // I(t) = integral over |s| <= a/2 of exp(-ik (s - t)^2 / 2z) ds
  std::vector<Complex> axis(g.size);
  for (std::size_t j = 0; j < g.size; ++j) {
    const double t = g.x(j);
    auto integrand = [&](double s, bool imag) {
      const double ph = -k * (s - t) * (s - t) / (2.0 * c.distance);
      return imag ? std::sin(ph) : std::cos(ph);
    };
    double re = 0.0, im = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double lo = -half + p * width, hi = lo + width;
      re += boost::math::quadrature::gauss<double, 20>::integrate(
          [&](double s) { return integrand(s, false); }, lo, hi);
      im += boost::math::quadrature::gauss<double, 20>::integrate(
          [&](double s) { return integrand(s, true); }, lo, hi);
    }
    axis[j] = Complex(re, im);
  }

  const Complex lead = -1.0 / (Complex(0.0, 1.0) * c.wavelength * c.distance) *
                       std::polar(1.0, -std::fmod(k * c.distance, 2.0 * std::numbers::pi));
  ComplexField out(g);
  // y(i) for row i equals x(N - 1 - i), and the integral is even in t.
  for (std::size_t i = 0; i < g.size; ++i)
    for (std::size_t j = 0; j < g.size; ++j) out(i, j) = lead * axis[g.size - 1 - i] * axis[j];
  return out;
}

double relative_l2(const ComplexField& got, const ComplexField& want) {
  if (!(got.grid() == want.grid())) throw ConfigError("fields differ in grid");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < got.samples().size(); ++i) {
    num += std::norm(got.samples()[i] - want.samples()[i]);
    den += std::norm(want.samples()[i]);
  }
  if (den == 0.0) throw MetricError("relative error against a zero field");
  return std::sqrt(num / den);
}

ApertureResult validate_aperture(const ApertureCheck& c, Backend backend) {
  const GridSpec g{c.grid, c.pitch, c.wavelength};
  ComplexField ones(g);
  for (Complex& s : ones.samples()) s = 1.0;
  const ComplexField field = fresnel_propagate(crop(ones, c.aperture), c.distance, backend);
  ApertureResult r;
  r.rel_l2 = relative_l2(field, aperture_fresnel_quadrature(c));
  r.fresnel_number = c.aperture * c.aperture / (4.0 * c.wavelength * std::abs(c.distance));
  return r;
}

}  // namespace fomul
