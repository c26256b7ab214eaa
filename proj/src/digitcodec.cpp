#include "fomul/digitcodec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fomul/error.hpp"

namespace fomul {

CellLayout CellLayout::fit(std::size_t grid, std::size_t n_cells, bool interleaved) {
  if (n_cells == 0) throw ConfigError("layout needs at least one cell");
  CellLayout l;
  l.grid = grid;
  l.n_cells = n_cells;
  l.cell_pixels = grid / n_cells;
  l.offset = (grid - n_cells * l.cell_pixels) / 2;
  l.interleaved = interleaved;
  l.validate();
  return l;
}

CellLayout CellLayout::spanning(const GridSpec& grid, double width, std::size_t n_cells,
                                bool interleaved) {
  if (!(width > 0.0)) throw ConfigError("detector width must be positive");
  if (n_cells == 0) throw ConfigError("layout needs at least one cell");
  const double span = std::min(width, grid.extent());
  const auto pixels = std::min(grid.size, static_cast<std::size_t>(span / grid.pitch + 1e-9));
  CellLayout l;
  l.grid = grid.size;
  l.n_cells = n_cells;
  l.cell_pixels = pixels / n_cells;
  l.offset = (grid.size - n_cells * l.cell_pixels) / 2;
  l.interleaved = interleaved;
  l.validate();
  return l;
}

void CellLayout::validate() const {
  if (n_cells == 0 || cell_pixels == 0) throw ConfigError("layout cells do not fit the grid");
  if (offset + n_cells * cell_pixels > grid) throw ConfigError("layout exceeds the grid");
}

std::size_t CellLayout::capacity() const { return interleaved ? (n_cells + 1) / 2 : n_cells; }

std::size_t CellLayout::slot_cell(std::size_t slot) const {
  return n_cells - 1 - slot * (interleaved ? 2 : 1);
}

std::size_t CellLayout::first_row(std::size_t cell) const {
  return offset + (n_cells - 1 - cell) * cell_pixels;
}

std::size_t CellLayout::first_col(std::size_t cell) const { return offset + cell * cell_pixels; }

ComplexField encode_cells(const std::vector<double>& cell_values, const CellLayout& layout,
                          const GridSpec& grid) {
  layout.validate();
  if (layout.grid != grid.size) throw ConfigError("layout built for a different grid size");
  if (cell_values.size() > layout.n_cells) throw ConfigError("more values than layout cells");
  double peak = 0.0;
  for (double v : cell_values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("cell values must be non-negative");
    peak = std::max(peak, v);
  }
  ComplexField out(grid);
  if (peak == 0.0) return out;
  for (std::size_t q = 0; q < cell_values.size(); ++q) {
    if (cell_values[q] == 0.0) continue;
    const double amp = cell_values[q] / peak;
    const std::size_t r0 = layout.first_row(q), c0 = layout.first_col(q);
    for (std::size_t i = r0; i < r0 + layout.cell_pixels; ++i)
      for (std::size_t j = c0; j < c0 + layout.cell_pixels; ++j) out(i, j) = amp;
  }
  return out;
}

ComplexField encode_diagonal(const DigitVector& values, const CellLayout& layout,
                             const GridSpec& grid, std::size_t first_slot) {
  layout.validate();
  if (first_slot + values.size() > layout.capacity())
    throw ConfigError("too many digits for the layout");
  std::vector<double> cells(layout.n_cells, 0.0);
  for (std::size_t s = 0; s < values.size(); ++s)
    cells[layout.slot_cell(first_slot + s)] = static_cast<double>(values[s]);
  return encode_cells(cells, layout, grid);
}

ComplexField encode_banded(const DigitVector& values, std::size_t n_bands, const GridSpec& grid) {
  grid.validate();
  if (n_bands == 0 || n_bands > grid.size) throw ConfigError("band count must be in 1..N");
  if (values.size() > n_bands) throw ConfigError("more values than bands");
  const std::uint64_t peak = values.max_digit();
  ComplexField out(grid);
  if (peak == 0) return out;
  const std::size_t base = grid.size / n_bands;
  const std::size_t lead = (grid.size - base * n_bands) / 2;
  for (std::size_t i = 0; i < grid.size; ++i) {
    std::size_t band = i < base + lead ? 0 : 1 + (i - base - lead) / base;
    band = std::min(band, n_bands - 1);
    if (band >= values.size()) continue;
    const double amp = static_cast<double>(values[band]) / static_cast<double>(peak);
    for (std::size_t j = 0; j < grid.size; ++j) out(i, j) = amp;
  }
  return out;
}

std::vector<double> integrate_slots(const IntensityImage& img, const CellLayout& layout,
                                    bool mirrored) {
  layout.validate();
  if (layout.grid != img.size()) throw ConfigError("layout built for a different grid size");
  const std::size_t cap = layout.capacity();
  std::vector<double> raw(cap);
  for (std::size_t s = 0; s < cap; ++s) {
    const std::size_t q = layout.slot_cell(mirrored ? cap - 1 - s : s);
    const std::size_t r0 = layout.first_row(q), c0 = layout.first_col(q);
    double acc = 0.0;
    for (std::size_t i = r0; i < r0 + layout.cell_pixels; ++i)
      for (std::size_t j = c0; j < c0 + layout.cell_pixels; ++j) acc += img(i, j);
    raw[s] = acc;
  }
  return raw;
}

namespace {

double rounding_ss(const std::vector<double>& a, double s) {
  double acc = 0.0;
  for (double v : a) {
    const double d = s * v - std::round(s * v);
    acc += d * d;
  }
  return acc;
}

/// Without a reference the scale is searched over s = t / max(a), t = 1..4096, so the
/// brightest slot holds an integer digit. A candidate is accepted when every slot is
/// within kAccept of an integer and no slot bright enough to be a digit at the largest
/// scale rounds to zero; the smallest such t wins. Failing that, the least squared
/// rounding residual does. Vectors sharing a common factor decode divided by it.
double search_scale(const std::vector<double>& a) {
  constexpr double kAccept = 0.2;
  const double peak = *std::max_element(a.begin(), a.end());
  const double lit = peak / (2.0 * static_cast<double>(kMaxDetectableDigit));
  double best_s = 1.0 / peak, best_r = rounding_ss(a, best_s);
  for (std::uint64_t t = 1; t <= kMaxDetectableDigit; ++t) {
    const double s = static_cast<double>(t) / peak;
    bool ok = true;
    for (double v : a) {
      const double x = s * v;
      if (std::abs(x - std::round(x)) > kAccept || (v >= lit && std::round(x) < 1.0)) {
        ok = false;
        break;
      }
    }
    if (ok) return s;
    const double r = rounding_ss(a, s);
    if (r < best_r) {
      best_r = r;
      best_s = s;
    }
  }
  return best_s;
}

}  // namespace

DetectorReadout readout_from_raw(std::vector<double> raw,
                                 const std::optional<DigitVector>& expected) {
  DetectorReadout r;
  r.raw = std::move(raw);
  r.amplitudes.resize(r.raw.size());
  for (std::size_t i = 0; i < r.raw.size(); ++i) r.amplitudes[i] = std::sqrt(std::max(r.raw[i], 0.0));
  const auto& a = r.amplitudes;
  const double peak = a.empty() ? 0.0 : *std::max_element(a.begin(), a.end());

  if (expected) {
    if (expected->size() != a.size())
      throw ConfigError("expected vector needs one digit per detector slot");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      num += a[i] * static_cast<double>((*expected)[i]);
      den += a[i] * a[i];
    }
    if (den == 0.0 && expected->max_digit() > 0)
      throw DetectionError("detector saw no light but digits were expected");
    r.fitted_scale = den > 0.0 ? num / den : 0.0;
    r.has_expected = true;
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double e = r.fitted_scale * a[i] - static_cast<double>((*expected)[i]);
      r.max_abs_err = std::max(r.max_abs_err, std::abs(e));
      sq += e * e;
    }
    r.rms_err = a.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(a.size()));
  } else if (peak > 0.0) {
    const double s0 = search_scale(a);
    double num = 0.0, den = 0.0;
    for (double v : a) {
      num += v * std::round(s0 * v);
      den += v * v;
    }
    r.fitted_scale = num / den;
  }

  r.digits.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r.digits[i] = static_cast<std::uint64_t>(std::max(0.0, std::round(r.fitted_scale * a[i])));
  return r;
}

DetectorReadout detect(const IntensityImage& img, const CellLayout& layout,
                       const std::optional<DigitVector>& expected, bool mirrored) {
  return readout_from_raw(integrate_slots(img, layout, mirrored), expected);
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

template <typename T, typename F>
std::string join(const std::vector<T>& v, F f) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += f(v[i]);
  }
  return s;
}

}  // namespace

std::string DetectorReadout::serialize(const std::string& prefix) const {
  std::string s;
  s += prefix + "slots = " + std::to_string(raw.size()) + "\n";
  s += prefix + "raw = " + join(raw, fmt) + "\n";
  s += prefix + "amplitudes = " + join(amplitudes, fmt) + "\n";
  s += prefix + "fitted_scale = " + fmt(fitted_scale) + "\n";
  s += prefix + "digits = " +
       join(digits, [](std::uint64_t d) { return std::to_string(d); }) + "\n";
  if (has_expected) {
    s += prefix + "max_abs_err = " + fmt(max_abs_err) + "\n";
    s += prefix + "rms_err = " + fmt(rms_err) + "\n";
  }
  return s;
}

}  // namespace fomul
