#include "commands.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fomul/error.hpp"
#include "fomul/executor.hpp"
#include "fomul/montgomery.hpp"
#include "fomul/optics.hpp"
#include "fomul/scriptgen.hpp"
#include "fomul/validation.hpp"

namespace fomul::cli {
namespace {

constexpr const char* kOutputEnv = "FOMUL_OUTPUT_DIR";

Integer parse_integer(const std::string& s, const char* name) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError(std::string("--") + name + " must be a non-negative integer");
  return Integer(s);
}

/// Arbitrary-length non-negative decimal; checked at parse time so bad input is a usage error.
const CLI::Validator kDecimal(
    [](std::string& s) {
      return s.empty() || s.find_first_not_of("0123456789") != std::string::npos
                 ? std::string("expected a non-negative decimal integer")
                 : std::string();
    },
    "UINT");

Backend parse_backend(const std::string& s) { return s == "direct" ? Backend::Direct : Backend::Fft; }

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "': file not found or unreadable");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// One detector event per non-empty line, digits separated by whitespace.
std::vector<std::optional<DigitVector>> read_expected(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::optional<DigitVector>> out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::uint64_t> d;
    std::string tok;
    while (ls >> tok) {
      if (tok.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError("expected-digit file holds a non-digit token '" + tok + "'");
      d.push_back(std::stoull(tok));
    }
    if (!d.empty()) out.emplace_back(DigitVector(std::move(d)));
  }
  return out;
}

struct Options {
  std::string backend = "fft";
  int threads = 0;

  // run
  std::string program;
  std::string out_dir;
  std::string expected;
  std::size_t grid_override = 0;
  bool ideal = false;
  bool no_images = false;
  bool timings = false;

  // arithmetic
  std::string a, b, m;
  std::string variant = "conv";
  unsigned overlap = 6;
  unsigned k = 0;

  // scriptgen
  std::size_t grid = 1005;
  double pitch = 0.001;
  double wavelength = 0.0002;
  double separation = 0.0;
  unsigned gen_overlap = 0;
  bool no_taps = false;
  std::string gen_output_dir = "output";
  std::string gen_tap_dir = "tap";
  double detector_width = 12.0;
  std::string output_file;
  std::string expected_out;

  // experiments
  double lambda = 0.0002;
  double focal = 100.0;
  double crop = 4.0;
  std::size_t exp_grid = 250;
  double extent = 2.0;
  int squares = 8;
  bool sweep = false;

  std::size_t ap_grid = 128;
  double ap_pitch = 0.001;
  double aperture = 0.032;
  double ap_lambda = 0.0005;
  double distance = 5.0;
  double tolerance = 1e-3;

  std::vector<std::size_t> bench_grids{250, 1005};
  int repeat = 1;
};

int cmd_run(const Options& o, std::ostream& out) {
  script::Program p = script::parse_program(read_file(o.program));
  if (o.grid_override) p.grid_size = o.grid_override;
  script::ExecOptions ex;
  ex.backend = parse_backend(o.backend);
  ex.write_images = !o.no_images;
  std::string dir = o.out_dir;
  if (dir.empty())
    if (const char* env = std::getenv(kOutputEnv)) dir = env;
  if (!dir.empty()) {
    ex.output_dir = std::filesystem::path(dir);
    ex.tap_dir = std::filesystem::path(dir) / "tap";
  }
  if (!o.expected.empty()) ex.expected = read_expected(o.expected);
  const script::ExecutionReport r = o.ideal ? script::execute_ideal(p, ex) : script::execute(p, ex);
  out << r.format(o.timings);
  return 0;
}

int cmd_scriptgen(const Options& o, std::ostream& out) {
  script::ScriptGeometry g;
  g.grid = o.grid;
  g.pitch = o.pitch;
  g.wavelength = o.wavelength;
  if (o.separation > 0.0) g.separation = o.separation;
  if (o.gen_overlap > 0) g.overlap = o.gen_overlap;
  g.taps = !o.no_taps;
  g.output_dir = o.gen_output_dir;
  g.tap_dir = o.gen_tap_dir;
  g.detector_width = o.detector_width;
  const auto s = script::generate_modmul_script(parse_integer(o.a, "a"), parse_integer(o.b, "b"),
                                                parse_integer(o.m, "m"), g);
  if (o.output_file.empty()) {
    out << s.text;
  } else {
    std::ofstream f(o.output_file);
    if (!f) throw std::runtime_error("cannot write '" + o.output_file + "'");
    f << s.text;
  }
  if (!o.expected_out.empty()) {
    std::ofstream f(o.expected_out);
    if (!f) throw std::runtime_error("cannot write '" + o.expected_out + "'");
    for (std::size_t i = 0; i < s.expected_slots.size(); ++i)
      f << (i ? " " : "") << s.expected_slots[i];
    f << "\n";
  }
  return 0;
}

int cmd_modmul(const Options& o, std::ostream& out) {
  const Integer a = parse_integer(o.a, "a"), b = parse_integer(o.b, "b"),
                m = parse_integer(o.m, "m");
  const auto ctx = montgomery_setup(m, o.k ? o.k : operand_width_k(a, b, m));
  const Integer ab = to_montgomery(a, ctx), bb = to_montgomery(b, ctx);
  out << "a = " << a << "\nb = " << b << "\n";
  if (o.variant == "exact") {
    out << "a_bar = " << ab << "\nb_bar = " << bb << "\n";
    out << format_trace(montgomery_mul_exact(ab, bb, ctx), ctx);
  } else if (o.variant == "hilo") {
    out << "a_bar = " << ab << "\nb_bar = " << bb << "\n";
    out << format_trace(montgomery_mul_hilo(ab, bb, ctx), ctx);
  } else {
    out << format_trace(montgomery_mul_conv(ab, bb, ctx, o.overlap), ctx);
  }
  out << "expected = " << (a * b) % m << "\n";
  return 0;
}

void print_experiment(const ExperimentResult& r, std::ostream& out) {
  out << "lambda = " << num(r.wavelength) << " focal = " << num(r.focal_length)
      << " crop = " << num(r.crop_width) << " grid = " << r.grid
      << " fidelity = " << num(r.fidelity) << "\n";
}

int cmd_crop(const Options& o, std::ostream& out) {
  CropGeometry geo;
  geo.extent = o.extent;
  geo.n_squares = o.squares;
  const Backend be = parse_backend(o.backend);
  if (!o.sweep) {
    print_experiment(cropping_experiment(o.lambda, o.focal, o.crop, o.exp_grid, geo, be), out);
    return 0;
  }
  out << "# crop sweep\n";
  for (double c : {1.0, 2.0, 3.0, 4.0})
    print_experiment(cropping_experiment(o.lambda, o.focal, c, o.exp_grid, geo, be), out);
  out << "# wavelength sweep\n";
  for (double l : {0.0001, 0.0002, 0.0006, 0.0012})
    print_experiment(cropping_experiment(l, o.focal, o.crop, o.exp_grid, geo, be), out);
  out << "# focal sweep\n";
  for (double f : {50.0, 100.0, 200.0, 400.0})
    print_experiment(cropping_experiment(o.lambda, f, o.crop, o.exp_grid, geo, be), out);
  return 0;
}

int cmd_aperture(const Options& o, std::ostream& out) {
  ApertureCheck c{o.ap_grid, o.ap_pitch, o.aperture, o.ap_lambda, o.distance};
  const ApertureResult r = validate_aperture(c, parse_backend(o.backend));
  const bool ok = r.rel_l2 <= o.tolerance;
  out << "grid = " << c.grid << "\naperture = " << num(c.aperture) << "\nwavelength = "
      << num(c.wavelength) << "\ndistance = " << num(c.distance)
      << "\nfresnel_number = " << num(r.fresnel_number) << "\nrel_l2 = " << num(r.rel_l2)
      << "\ntolerance = " << num(o.tolerance) << "\nresult = " << (ok ? "pass" : "fail") << "\n";
  return ok ? 0 : 1;
}

int cmd_bench(const Options& o, std::ostream& out) {
  const Backend be = parse_backend(o.backend);
  LensSpec lens;
  lens.focal_length = 15.0;
  lens.distance_after = 15.0;
  lens.refractive_index = 1.5;
  for (std::size_t n : o.bench_grids) {
    const GridSpec g{n, 0.001, 0.0002};
    ComplexField f = checkerboard(8, g);
    double total = 0.0;
    for (int r = 0; r < o.repeat; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      f = apply_lens(f, lens, be);
      total += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    out << "grid = " << n << " backend = " << o.backend << " threads = " << omp_get_max_threads()
        << " seconds_per_lens = " << num(total / o.repeat) << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Fourier-optics multiplication simulator"};
  app.require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--backend", o.backend, "propagation backend")
        ->check(CLI::IsMember({"direct", "fft"}));
    sub->add_option("--threads", o.threads, "worker threads (default: all cores)")
        ->check(CLI::PositiveNumber);
  };

  auto* run = app.add_subcommand("run", "execute an instruction file");
  run->add_option("program", o.program, "instruction file")->required();
  run->add_option("--out", o.out_dir,
                  std::string("output directory (default: $") + kOutputEnv + " or the header)");
  run->add_option("--expected", o.expected, "expected digits, one detector event per line");
  run->add_option("--grid", o.grid_override, "override the grid size")->check(CLI::Range(2, 1 << 16));
  run->add_flag("--ideal", o.ideal, "cell-level semantics without diffraction");
  run->add_flag("--no-images", o.no_images, "skip tap and read_out images");
  run->add_flag("--timings", o.timings, "append per-step wall times");
  add_common(run);

  auto* gen = app.add_subcommand("scriptgen", "emit a modular-multiplication program");
  gen->add_option("--a", o.a)->required()->check(kDecimal);
  gen->add_option("--b", o.b)->required()->check(kDecimal);
  gen->add_option("--m", o.m)->required()->check(kDecimal);
  gen->add_option("--grid", o.grid)->check(CLI::Range(2, 1 << 16));
  gen->add_option("--pitch", o.pitch, "pixel pitch (mm)")->check(CLI::PositiveNumber);
  gen->add_option("--wavelength", o.wavelength, "wavelength (mm)")->check(CLI::PositiveNumber);
  gen->add_option("--separation", o.separation, "lens spacing (mm)")->check(CLI::PositiveNumber);
  gen->add_option("--overlap", o.gen_overlap, "overlap digits")->check(CLI::PositiveNumber);
  gen->add_option("--output-dir", o.gen_output_dir, "header output directory");
  gen->add_option("--tap-dir", o.gen_tap_dir, "header tap directory");
  gen->add_option("--detector-width", o.detector_width)->check(CLI::PositiveNumber);
  gen->add_flag("--no-taps", o.no_taps);
  gen->add_option("-o,--output", o.output_file, "write the program here instead of stdout");
  gen->add_option("--expected-out", o.expected_out, "write expected detector digits here");

  auto* mm = app.add_subcommand("modmul", "print a Montgomery multiplication trace");
  mm->add_option("--a", o.a)->required()->check(kDecimal);
  mm->add_option("--b", o.b)->required()->check(kDecimal);
  mm->add_option("--m", o.m)->required()->check(kDecimal);
  mm->add_option("--variant", o.variant)->check(CLI::IsMember({"exact", "hilo", "conv"}));
  mm->add_option("--overlap", o.overlap)->check(CLI::PositiveNumber);
  mm->add_option("--k", o.k, "bits of r = 2^k (default: operand width + 1)");

  auto* crop = app.add_subcommand("crop-exp", "two-lens imaging with a cropped middle plane");
  crop->add_option("--lambda", o.lambda, "wavelength (mm)")->check(CLI::PositiveNumber);
  crop->add_option("--focal", o.focal, "focal length (mm)")->check(CLI::PositiveNumber);
  crop->add_option("--crop", o.crop, "crop width (mm)")->check(CLI::PositiveNumber);
  crop->add_option("--grid", o.exp_grid)->check(CLI::Range(2, 1 << 16));
  crop->add_option("--extent", o.extent, "board side (mm)")->check(CLI::PositiveNumber);
  crop->add_option("--squares", o.squares)->check(CLI::Range(2, 1 << 12));
  crop->add_flag("--sweep", o.sweep, "run the crop, wavelength and focal sweeps");
  add_common(crop);

  auto* ap = app.add_subcommand("validate-aperture", "square opening vs quadrature reference");
  ap->add_option("--grid", o.ap_grid)->check(CLI::Range(2, 1 << 14));
  ap->add_option("--pitch", o.ap_pitch)->check(CLI::PositiveNumber);
  ap->add_option("--aperture", o.aperture)->check(CLI::PositiveNumber);
  ap->add_option("--lambda", o.ap_lambda)->check(CLI::PositiveNumber);
  ap->add_option("--z", o.distance)->check(CLI::PositiveNumber);
  ap->add_option("--tolerance", o.tolerance)->check(CLI::PositiveNumber);
  add_common(ap);

  auto* bench = app.add_subcommand("bench", "wall time per lens");
  bench->add_option("--grid", o.bench_grids)->check(CLI::Range(2, 1 << 14));
  bench->add_option("--repeat", o.repeat)->check(CLI::PositiveNumber);
  add_common(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  if (o.threads > 0) omp_set_num_threads(o.threads);
  try {
    if (app.got_subcommand(run)) return cmd_run(o, out);
    if (app.got_subcommand(gen)) return cmd_scriptgen(o, out);
    if (app.got_subcommand(mm)) return cmd_modmul(o, out);
    if (app.got_subcommand(crop)) return cmd_crop(o, out);
    if (app.got_subcommand(ap)) return cmd_aperture(o, out);
    if (app.got_subcommand(bench)) return cmd_bench(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace fomul::cli
