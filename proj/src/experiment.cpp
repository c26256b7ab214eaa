#include <cmath>

#include "fomul/error.hpp"
#include "fomul/optics.hpp"

namespace fomul {
namespace {

/// Square index of each pixel along one axis; the remainder is split between the edges.
std::vector<int> square_index(std::size_t n, int n_squares) {
  const std::size_t base = n / static_cast<std::size_t>(n_squares);
  const std::size_t rem = n - base * static_cast<std::size_t>(n_squares);
  const std::size_t lead = rem / 2;
  std::vector<int> idx(n);
  for (std::size_t t = 0; t < n; ++t) {
    if (t < base + lead) {
      idx[t] = 0;
    } else {
      const std::size_t s = 1 + (t - base - lead) / base;
      idx[t] = static_cast<int>(std::min<std::size_t>(s, static_cast<std::size_t>(n_squares - 1)));
    }
  }
  return idx;
}

}  // namespace

ComplexField checkerboard(int n_squares, const GridSpec& grid) {
  grid.validate();
  if (n_squares < 2 || static_cast<std::size_t>(n_squares) > grid.size)
    throw ConfigError("checkerboard needs 2..N squares per side");
  const auto idx = square_index(grid.size, n_squares);
  ComplexField out(grid);
  for (std::size_t i = 0; i < grid.size; ++i)
    for (std::size_t j = 0; j < grid.size; ++j)
      if ((idx[i] + idx[j]) % 2 == 0) out(i, j) = 1.0;
  return out;
}

ExperimentResult cropping_experiment(double wavelength, double focal_length, double crop_width,
                                     std::size_t grid, const CropGeometry& geometry,
                                     Backend backend) {
  if (!(wavelength > 0.0) || !(focal_length > 0.0) || !(crop_width > 0.0) ||
      !(geometry.extent > 0.0))
    throw ConfigError("cropping experiment parameters must be positive");
  const GridSpec g{grid, geometry.extent / static_cast<double>(grid), wavelength};
  const ComplexField board = checkerboard(geometry.n_squares, g);

  LensSpec lens;
  lens.focal_length = focal_length;
  lens.distance_after = 2.0 * focal_length;
  lens.refractive_index = geometry.refractive_index;

  ComplexField f = apply_lens(board, lens, backend);
  f = crop(f, crop_width);
  f = apply_lens(f, lens, backend);

  ExperimentResult r;
  r.wavelength = wavelength;
  r.focal_length = focal_length;
  r.crop_width = crop_width;
  r.grid = grid;
  r.input = intensity(board);
  r.output = intensity(f);
  r.fidelity = xcorr(r.output, mirror(r.input));
  return r;
}

}  // namespace fomul
