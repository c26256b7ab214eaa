#include "fomul/image_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "fomul/error.hpp"

namespace fomul {

std::filesystem::path sidecar_path(const std::filesystem::path& pgm_path) {
  auto p = pgm_path;
  p.replace_extension(".f64");
  return p;
}

void write_intensity(const IntensityImage& img, const std::filesystem::path& pgm_path) {
  const auto s = img.samples();
  const double peak = s.empty() ? 0.0 : *std::max_element(s.begin(), s.end());

  std::string pgm = "P5\n" + std::to_string(img.size()) + " " + std::to_string(img.size()) +
                    "\n65535\n";
  const std::size_t header = pgm.size();
  pgm.resize(header + 2 * s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double v = peak > 0.0 ? std::round(s[i] / peak * 65535.0) : 0.0;
    const auto q = static_cast<std::uint16_t>(std::clamp(v, 0.0, 65535.0));
    pgm[header + 2 * i] = static_cast<char>(q >> 8);
    pgm[header + 2 * i + 1] = static_cast<char>(q & 0xff);
  }

  std::string raw(8 * s.size(), '\0');
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto bits = std::bit_cast<std::uint64_t>(s[i]);
    for (int b = 0; b < 8; ++b) raw[8 * i + b] = static_cast<char>((bits >> (8 * b)) & 0xff);
  }

  std::ofstream out(pgm_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + pgm_path.string());
  out.write(pgm.data(), static_cast<std::streamsize>(pgm.size()));
  std::ofstream side(sidecar_path(pgm_path), std::ios::binary);
  if (!side) throw std::runtime_error("cannot write " + sidecar_path(pgm_path).string());
  side.write(raw.data(), static_cast<std::streamsize>(raw.size()));
}

IntensityImage read_sidecar(const std::filesystem::path& path, std::size_t size, double pitch) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (raw.size() != 8 * size * size) throw ConfigError("sidecar size mismatch: " + path.string());
  std::vector<double> v(size * size);
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b)
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(raw[8 * i + b])) << (8 * b);
    v[i] = std::bit_cast<double>(bits);
  }
  return IntensityImage(size, pitch, std::move(v));
}

}  // namespace fomul
