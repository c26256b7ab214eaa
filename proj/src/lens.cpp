#include <cmath>
#include <numbers>

#include "fomul/error.hpp"
#include "fomul/optics.hpp"

namespace fomul {

void LensSpec::validate() const {
  if (distance_after == 0.0 || !std::isfinite(distance_after))
    throw ConfigError("lens distance must be nonzero and finite");
  if (focal_length == 0.0 || !std::isfinite(focal_length))
    throw ConfigError("focal length must be nonzero and finite");
  if (!(refractive_index >= 1.0) || !std::isfinite(refractive_index))
    throw ConfigError("refractive index must be >= 1");
  if (!std::isfinite(thickness)) throw ConfigError("lens thickness must be finite");
  if (!(aperture > 0.0)) throw ConfigError("aperture must be positive");
  if (!(scale_x > 0.0) || !(scale_y > 0.0) || !std::isfinite(scale_x) || !std::isfinite(scale_y))
    throw ConfigError("scale factors must be positive");
}

namespace {

ComplexField dilate(const ComplexField& f, double sx, double sy) {
  const GridSpec& g = f.grid();
  const auto n = static_cast<std::ptrdiff_t>(g.size);
  const double centre = 0.5 * static_cast<double>(g.size - 1);
  ComplexField out(g);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto si = static_cast<std::ptrdiff_t>(std::lround(centre - g.y(i) / sy / g.pitch));
    if (si < 0 || si >= n) continue;
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      const auto sj = static_cast<std::ptrdiff_t>(std::lround(g.x(j) / sx / g.pitch + centre));
      if (sj >= 0 && sj < n) out(i, j) = f(si, sj);
    }
  }
  return out;
}

}  // namespace

ComplexField apply_lens(const ComplexField& f, const LensSpec& spec, Backend backend) {
  spec.validate();
  const GridSpec& g = f.grid();
  const ComplexField stopped = std::isfinite(spec.aperture) ? crop(f, spec.aperture) : f;

  const double k = 2.0 * std::numbers::pi / g.wavelength;
  const double two_pi = 2.0 * std::numbers::pi;
  const double focal = std::abs(spec.focal_length);
  const Complex bulk =
      std::polar(1.0, -std::fmod(k * spec.refractive_index * spec.thickness, two_pi));
  std::vector<Complex> px(g.size), py(g.size);
  for (std::size_t t = 0; t < g.size; ++t) {
    px[t] = std::polar(1.0, std::fmod(k * g.x(t) * g.x(t) / (2.0 * focal), two_pi));
    py[t] = std::polar(1.0, std::fmod(k * g.y(t) * g.y(t) / (2.0 * focal), two_pi));
  }
  ComplexField phased(g);
  const auto n = static_cast<std::ptrdiff_t>(g.size);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    for (std::ptrdiff_t j = 0; j < n; ++j) phased(i, j) = stopped(i, j) * (bulk * py[i] * px[j]);

  ComplexField out = fresnel_propagate(phased, spec.distance_after, backend);
  if (spec.scale_x != 1.0 || spec.scale_y != 1.0) out = dilate(out, spec.scale_x, spec.scale_y);
  return out;
}

double lensmaker_focal_length(double r1, double r2, double refractive_index) {
  const double power = (refractive_index - 1.0) * (1.0 / r1 - 1.0 / r2);
  if (power == 0.0 || !std::isfinite(power))
    throw ConfigError("lens surfaces have zero optical power");
  return 1.0 / power;
}

double lens_spacing(double f_i, double z_prev, int n_mults) {
  const double denom = 1.0 / f_i - static_cast<double>(n_mults + 1) / z_prev;
  if (denom == 0.0 || !std::isfinite(denom))
    throw ConfigError("lens spacing undefined: output is collimated");
  return -1.0 / denom;
}

double focal_for_spacing(double z_i, double z_prev, int n_mults) {
  const double power = static_cast<double>(n_mults + 1) / z_prev - 1.0 / z_i;
  if (power == 0.0 || !std::isfinite(power))
    throw ConfigError("no finite focal length gives this spacing");
  return 1.0 / power;
}

}  // namespace fomul
