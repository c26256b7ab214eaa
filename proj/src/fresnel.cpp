#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "fomul/error.hpp"
#include "fomul/optics.hpp"

namespace fomul {
namespace {

static_assert(sizeof(fftw_complex) == sizeof(Complex));

/// exp(-i k (d p)^2 / (2 z)) for d in [-(N-1), N-1], stored at index d + N - 1.
std::vector<Complex> kernel_table(const GridSpec& g, double z) {
  const std::size_t n = g.size;
  std::vector<Complex> h(2 * n - 1);
  for (std::size_t idx = 0; idx < h.size(); ++idx) {
    const double d = (static_cast<double>(idx) - static_cast<double>(n - 1)) * g.pitch;
    const double phase = std::fmod(std::numbers::pi * d * d / (g.wavelength * z),
                                   2.0 * std::numbers::pi);
    h[idx] = std::polar(1.0, -phase);
  }
  return h;
}

/// (-1 / (i lambda z)) e^{-ikz} pitch^2
Complex prefactor(const GridSpec& g, double z) {
  const double k = 2.0 * std::numbers::pi / g.wavelength;
  const Complex lead = -1.0 / (Complex(0.0, 1.0) * g.wavelength * z);
  const double phase = std::fmod(k * z, 2.0 * std::numbers::pi);
  return lead * std::polar(1.0, -phase) * g.pitch * g.pitch;
}

void check_distance(double z) {
  if (z == 0.0 || !std::isfinite(z)) throw ConfigError("propagation distance must be nonzero");
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : ptr(static_cast<Complex*>(fftw_malloc(sizeof(Complex) * n))) {
    if (!ptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* raw() { return reinterpret_cast<fftw_complex*>(ptr); }
  Complex* ptr;
};

/// In-place 1-D plans, created once per length. Planning is not thread-safe in FFTW,
/// execution on distinct aligned buffers is.
class PlanCache {
 public:
  struct Plans {
    fftw_plan forward;
    fftw_plan backward;
  };

  static const Plans& get(std::size_t n) {
    static PlanCache cache;
    std::lock_guard lock(cache.mutex_);
    auto it = cache.plans_.find(n);
    if (it == cache.plans_.end()) {
      FftwBuffer probe(n);
      const int len = static_cast<int>(n);
      Plans p{fftw_plan_dft_1d(len, probe.raw(), probe.raw(), FFTW_FORWARD, FFTW_ESTIMATE),
              fftw_plan_dft_1d(len, probe.raw(), probe.raw(), FFTW_BACKWARD, FFTW_ESTIMATE)};
      it = cache.plans_.emplace(n, p).first;
    }
    return it->second;
  }

 private:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }
  std::mutex mutex_;
  std::map<std::size_t, Plans> plans_;
};

/// Smallest multiple of 4 that is >= n and has no prime factor above 7.
std::size_t padded_length(std::size_t n) {
  for (std::size_t p = (n + 3) / 4 * 4;; p += 4) {
    std::size_t r = p;
    for (std::size_t f : {2, 3, 5, 7})
      while (r % f == 0) r /= f;
    if (r == 1) return p;
  }
}

}  // namespace

ComplexField fresnel_propagate_direct(const ComplexField& f, double z) {
  check_distance(z);
  const GridSpec& g = f.grid();
  const std::size_t n = g.size;
  const auto h = kernel_table(g, z);
  const Complex c = prefactor(g, z);
  ComplexField out(g);
  const auto total = static_cast<std::ptrdiff_t>(n * n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
    const std::size_t i1 = static_cast<std::size_t>(idx) / n;
    const std::size_t j1 = static_cast<std::size_t>(idx) % n;
    Complex acc{};
    for (std::size_t i0 = 0; i0 < n; ++i0) {
      const Complex hy = h[i0 + n - 1 - i1];
      for (std::size_t j0 = 0; j0 < n; ++j0) acc += f(i0, j0) * (hy * h[j0 + n - 1 - j1]);
    }
    out(i1, j1) = c * acc;
  }
  return out;
}

ComplexField fresnel_propagate_fft(const ComplexField& f, double z) {
  check_distance(z);
  const GridSpec& g = f.grid();
  const std::size_t n = g.size;
  const std::size_t p = padded_length(2 * n - 1);
  const auto& plans = PlanCache::get(p);

  // Transfer function of the (even) kernel on the padded ring.
  const auto h = kernel_table(g, z);
  FftwBuffer kernel(p);
  std::fill(kernel.ptr, kernel.ptr + p, Complex{});
  for (std::size_t idx = 0; idx < h.size(); ++idx) {
    const std::ptrdiff_t d = static_cast<std::ptrdiff_t>(idx) - static_cast<std::ptrdiff_t>(n - 1);
    kernel.ptr[(d + static_cast<std::ptrdiff_t>(p)) % static_cast<std::ptrdiff_t>(p)] = h[idx];
  }
  fftw_execute_dft(plans.forward, kernel.raw(), kernel.raw());

  FftwBuffer work(n * p);
  const auto rows = static_cast<std::ptrdiff_t>(n);
  const auto cols = static_cast<std::ptrdiff_t>(p);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    Complex* row = work.ptr + i * p;
    for (std::size_t j = 0; j < n; ++j) row[j] = f(i, j);
    std::fill(row + n, row + p, Complex{});
    fftw_execute_dft(plans.forward, reinterpret_cast<fftw_complex*>(row),
                     reinterpret_cast<fftw_complex*>(row));
  }

#pragma omp parallel
  {
    FftwBuffer col(p);
#pragma omp for schedule(static)
    for (std::ptrdiff_t c = 0; c < cols; ++c) {
      for (std::size_t r = 0; r < n; ++r) col.ptr[r] = work.ptr[r * p + c];
      std::fill(col.ptr + n, col.ptr + p, Complex{});
      fftw_execute_dft(plans.forward, col.raw(), col.raw());
      const Complex hc = kernel.ptr[c];
      for (std::size_t r = 0; r < p; ++r) col.ptr[r] *= kernel.ptr[r] * hc;
      fftw_execute_dft(plans.backward, col.raw(), col.raw());
      for (std::size_t r = 0; r < n; ++r) work.ptr[r * p + c] = col.ptr[r];
    }
  }

  const Complex c = prefactor(g, z) / (static_cast<double>(p) * static_cast<double>(p));
  ComplexField out(g);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    Complex* row = work.ptr + i * p;
    fftw_execute_dft(plans.backward, reinterpret_cast<fftw_complex*>(row),
                     reinterpret_cast<fftw_complex*>(row));
    for (std::size_t j = 0; j < n; ++j) out(i, j) = c * row[j];
  }
  return out;
}

ComplexField fresnel_propagate(const ComplexField& f, double z, Backend backend) {
  return backend == Backend::Direct ? fresnel_propagate_direct(f, z) : fresnel_propagate_fft(f, z);
}

}  // namespace fomul
