#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "dsft/dsft.h"
#include "json.hpp"

namespace {

using dsft::cli::ConfigError;
using dsft::cli::RunConfig;
using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kToleranceFailed = 1, kConfigError = 2, kLibraryError = 3 };

struct LibraryError : std::runtime_error {
  int code;
  LibraryError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

void check(int rc) {
  if (rc != DSFT_OK) throw LibraryError(rc, dsft_last_error());
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
template <class T, void (*Destroy)(T*)>
using Owned = std::unique_ptr<T, Deleter<T, Destroy>>;

using Potential = Owned<dsft_potential, dsft_potential_destroy>;
using Basis = Owned<dsft_basis, dsft_basis_destroy>;
using States = Owned<dsft_bound_states, dsft_bound_states_destroy>;
using Multiplier = Owned<dsft_multiplier, dsft_multiplier_destroy>;
using Kernel = Owned<dsft_kernel, dsft_kernel_destroy>;
using Oracle = Owned<dsft_oracle, dsft_oracle_destroy>;

using Vec = std::vector<dsft_complex>;

// ---- pipeline pieces ----------------------------------------------------

struct Run {
  RunConfig cfg;
  std::filesystem::path out_dir;
  dsft_grid grid{};
  Json report;

  std::string out(const char* name) const { return (out_dir / name).string(); }
  double x(std::size_t i) const {
    return i + 1 == grid.n_points ? grid.x_max
                                  : grid.x_min + (grid.x_max - grid.x_min) * static_cast<double>(i) /
                                                     static_cast<double>(grid.n_points - 1);
  }
};

Potential make_potential(const RunConfig& c) {
  dsft_potential* p = nullptr;
  if (c.potential_kind == "sampled")
    check(dsft_potential_load(c.potential_file.c_str(), &p));
  else
    check(dsft_potential_create(c.potential_kind.c_str(), c.potential_params.data(),
                                c.potential_params.size(), &p));
  return Potential(p);
}

Basis make_basis(const Run& r, const dsft_potential* pot) {
  dsft_basis* b = nullptr;
  check(dsft_basis_build(pot, r.grid, r.cfg.xi_max, r.cfg.n_xi, &b));
  return Basis(b);
}

States make_states(const Run& r, const dsft_potential* pot) {
  dsft_bound_states* s = nullptr;
  check(dsft_bound_states_find(pot, r.grid, &s));
  return States(s);
}

Multiplier make_multiplier(const RunConfig& c) {
  if (!c.multiplier.present) throw ConfigError("this command needs multiplier.kind");
  dsft_multiplier* m = nullptr;
  check(dsft_multiplier_create(c.multiplier.kind.c_str(), c.multiplier.center, c.multiplier.radius, &m));
  return Multiplier(m);
}

Vec make_function(const Run& r) {
  const auto& f = r.cfg.function;
  Vec v(r.grid.n_points, dsft_complex{0.0, 0.0});
  if (f.kind == "sampled") {
    std::vector<double> re(r.grid.n_points);
    check(dsft_sample_file(f.file.c_str(), r.grid, re.data()));
    for (std::size_t i = 0; i < re.size(); ++i) v[i].re = re[i];
    return v;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double t = (r.x(i) - f.center) / f.width;
    if (f.kind == "gaussian")
      v[i].re = std::exp(-0.5 * t * t);
    else if (std::abs(t) < 1.0)
      v[i].re = std::exp(1.0 - 1.0 / (1.0 - t * t));
  }
  return v;
}

std::vector<double> trapezoid(const dsft_grid& g) {
  const double h = (g.x_max - g.x_min) / static_cast<double>(g.n_points - 1);
  std::vector<double> w(g.n_points, h);
  w.front() = w.back() = 0.5 * h;
  return w;
}

double l2(const Vec& f, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * (f[i].re * f[i].re + f[i].im * f[i].im);
  return std::sqrt(s);
}

double l2_diff(const Vec& a, const Vec& b, const std::vector<double>& w) {
  Vec d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = {a[i].re - b[i].re, a[i].im - b[i].im};
  return l2(d, w);
}

double sup_diff(const Vec& a, const Vec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::hypot(a[i].re - b[i].re, a[i].im - b[i].im));
  return m;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

// ---- report -----------------------------------------------------------------

Json base_report(const Run& r, const char* command, const dsft_potential* pot) {
  double l1 = 0, l2n = 0, radius = 0;
  check(dsft_potential_info(pot, &l1, &l2n, &radius));
  Json j;
  j["command"] = command;
  j["potential"] = {{"kind", r.cfg.potential_kind},
                    {"params", r.cfg.potential_params},
                    {"norm_l1", l1},
                    {"norm_l2", l2n},
                    {"support_radius", radius}};
  j["grid"] = {{"x_min", r.cfg.x_min}, {"x_max", r.cfg.x_max}, {"n", r.cfg.n}};
  j["xi"] = {{"max", r.cfg.xi_max}, {"n", r.cfg.n_xi}};
  j["defects"] = {{"plancherel", nullptr},
                  {"roundtrip_ffstar", nullptr},
                  {"roundtrip_fstarf", nullptr},
                  {"intertwining", nullptr},
                  {"kernel_vs_oracle", nullptr}};
  j["counts"] = {{"bound_states", nullptr}, {"masked_xi", nullptr}};
  return j;
}

void write_report(const Run& r) {
  std::ofstream out(r.out("report.json"), std::ios::trunc);
  if (!out) throw LibraryError(DSFT_ERR_IO, "cannot write " + r.out("report.json"));
  out << r.report.dump(2) << '\n';
}

struct BasisSummary {
  std::size_t masked = 0;
  double sup_bound = 0, max_residual = 0, unitarity = 0;
};

BasisSummary summarize(const dsft_basis* b) {
  BasisSummary s;
  std::size_t n = 0;
  check(dsft_basis_info(b, &n, &s.masked, &s.sup_bound, &s.max_residual));
  std::vector<double> xi(n);
  std::vector<unsigned char> masked(n);
  check(dsft_basis_xi(b, xi.data(), masked.data()));
  for (std::size_t j = 0; j < n; ++j) {
    if (masked[j]) continue;
    dsft_complex t, rr;
    check(dsft_basis_scattering(b, j, &t, &rr, nullptr));
    s.unitarity = std::max(s.unitarity, std::abs(t.re * t.re + t.im * t.im + rr.re * rr.re + rr.im * rr.im - 1.0));
  }
  return s;
}

void record_basis(Run& r, const BasisSummary& s) {
  r.report["counts"]["masked_xi"] = s.masked;
  r.report["basis"] = {{"sup_bound", s.sup_bound},
                       {"max_residual", s.max_residual},
                       {"max_unitarity_defect", s.unitarity}};
}

// ---- subcommands --------------------------------------------------------------

int cmd_eigenfunctions(Run& r) {
  auto pot = make_potential(r.cfg);
  auto basis = make_basis(r, pot.get());
  r.report = base_report(r, "eigenfunctions", pot.get());
  record_basis(r, summarize(basis.get()));
  check(dsft_basis_write_csv(basis.get(), r.out("eigenfunctions.csv").c_str()));
  write_report(r);
  return kOk;
}

int cmd_scattering(Run& r) {
  auto pot = make_potential(r.cfg);
  auto basis = make_basis(r, pot.get());
  r.report = base_report(r, "scattering", pot.get());
  record_basis(r, summarize(basis.get()));
  check(dsft_scattering_write_csv(basis.get(), r.out("scattering.csv").c_str()));
  write_report(r);
  return kOk;
}

int cmd_boundstates(Run& r) {
  auto pot = make_potential(r.cfg);
  auto states = make_states(r, pot.get());
  r.report = base_report(r, "boundstates", pot.get());
  const std::size_t n = dsft_bound_states_count(states.get());
  r.report["counts"]["bound_states"] = n;
  Json lambdas = Json::array();
  for (std::size_t k = 0; k < n; ++k) {
    double lambda = 0;
    check(dsft_bound_state_get(states.get(), k, &lambda, nullptr));
    lambdas.push_back(lambda);
  }
  r.report["eigenvalues"] = lambdas;
  check(dsft_bound_states_write_csv(states.get(), r.out("bound_states.csv").c_str()));
  write_report(r);
  return kOk;
}

int cmd_transform(Run& r) {
  auto pot = make_potential(r.cfg);
  auto basis = make_basis(r, pot.get());
  const Vec f = make_function(r);
  r.report = base_report(r, "transform", pot.get());
  record_basis(r, summarize(basis.get()));
  check(dsft_transform_write_csv(basis.get(), f.data(), r.out("transform.csv").c_str()));
  write_report(r);
  return kOk;
}

int cmd_kernel(Run& r) {
  auto pot = make_potential(r.cfg);
  auto phi = make_multiplier(r.cfg);
  auto basis = make_basis(r, pot.get());
  auto states = make_states(r, pot.get());
  dsft_kernel* k = nullptr;
  check(dsft_kernel_assemble(basis.get(), states.get(), phi.get(), &k));
  Kernel kernel(k);
  r.report = base_report(r, "kernel", pot.get());
  record_basis(r, summarize(basis.get()));
  r.report["counts"]["bound_states"] = dsft_bound_states_count(states.get());
  check(dsft_kernel_write_csv(kernel.get(), r.out("kernel.csv").c_str()));
  check(dsft_kernel_write_binary(kernel.get(), r.out("kernel.bin").c_str()));
  write_report(r);
  return kOk;
}

std::size_t oracle_pad(const RunConfig& c) { return c.has_oracle_pad ? c.oracle_pad : c.n / 2; }

struct Applied {
  Vec kernel, transform, oracle;
  double kernel_vs_oracle = 0, route = 0;
};

Applied apply_all(const Run& r, const dsft_potential* pot, const dsft_basis* basis,
                  const dsft_bound_states* states, const dsft_multiplier* phi, const Vec& f) {
  dsft_kernel* k = nullptr;
  check(dsft_kernel_assemble(basis, states, phi, &k));
  Kernel kernel(k);
  dsft_oracle* o = nullptr;
  check(dsft_oracle_create(pot, r.grid, oracle_pad(r.cfg), &o));
  Oracle oracle(o);

  Applied a;
  a.kernel.resize(f.size());
  a.transform.resize(f.size());
  a.oracle.resize(f.size());
  check(dsft_kernel_apply(kernel.get(), f.data(), a.kernel.data()));
  check(dsft_apply_via_transform(basis, states, phi, f.data(), a.transform.data()));
  check(dsft_oracle_functional_calculus(oracle.get(), phi, f.data(), a.oracle.data()));
  const auto w = trapezoid(r.grid);
  const double fn = l2(f, w);
  a.kernel_vs_oracle = fn > 0 ? l2_diff(a.kernel, a.oracle, w) / fn : 0.0;
  a.route = sup_diff(a.kernel, a.transform);
  return a;
}

int cmd_apply(Run& r) {
  auto pot = make_potential(r.cfg);
  auto phi = make_multiplier(r.cfg);
  auto basis = make_basis(r, pot.get());
  auto states = make_states(r, pot.get());
  const Vec f = make_function(r);
  const Applied a = apply_all(r, pot.get(), basis.get(), states.get(), phi.get(), f);

  r.report = base_report(r, "apply", pot.get());
  record_basis(r, summarize(basis.get()));
  r.report["counts"]["bound_states"] = dsft_bound_states_count(states.get());
  r.report["defects"]["kernel_vs_oracle"] = a.kernel_vs_oracle;
  r.report["checks"] = {{"route_equivalence", a.route}};

  std::ofstream out(r.out("apply.csv"), std::ios::trunc);
  if (!out) throw LibraryError(DSFT_ERR_IO, "cannot write " + r.out("apply.csv"));
  out << "x,re_f,im_f,re_kernel,im_kernel,re_transform,im_transform,re_oracle,im_oracle\n";
  for (std::size_t i = 0; i < f.size(); ++i)
    out << fmt(r.x(i)) << ',' << fmt(f[i].re) << ',' << fmt(f[i].im) << ',' << fmt(a.kernel[i].re) << ','
        << fmt(a.kernel[i].im) << ',' << fmt(a.transform[i].re) << ',' << fmt(a.transform[i].im) << ','
        << fmt(a.oracle[i].re) << ',' << fmt(a.oracle[i].im) << '\n';
  out.close();
  if (!out) throw LibraryError(DSFT_ERR_IO, "write to " + r.out("apply.csv") + " failed");
  write_report(r);
  return kOk;
}

int cmd_validate(Run& r) {
  auto pot = make_potential(r.cfg);
  auto phi = make_multiplier(r.cfg);
  auto basis = make_basis(r, pot.get());
  auto states = make_states(r, pot.get());
  const Vec f = make_function(r);
  const auto& tol = r.cfg.tol;

  double plancherel = 0, ffstar = 0, fstarf = 0, intertwining = 0;
  check(dsft_plancherel_defect(basis.get(), states.get(), f.data(), &plancherel));
  check(dsft_roundtrip_defect(basis.get(), states.get(), f.data(), &ffstar, &fstarf));
  check(dsft_intertwining_defect(basis.get(), f.data(), &intertwining));
  const Applied a = apply_all(r, pot.get(), basis.get(), states.get(), phi.get(), f);
  const BasisSummary bs = summarize(basis.get());

  dsft_oracle* o = nullptr;
  check(dsft_oracle_create(pot.get(), r.grid, 0, &o));
  Oracle bare(o);
  const std::size_t n_states = dsft_bound_states_count(states.get());
  const std::size_t n_oracle = dsft_oracle_negative_count(bare.get());
  check(dsft_oracle_write_spectrum_csv(bare.get(), r.out("oracle_spectrum.csv").c_str()));

  r.report = base_report(r, "validate", pot.get());
  record_basis(r, bs);
  r.report["counts"]["bound_states"] = n_states;
  r.report["defects"] = {{"plancherel", plancherel},
                         {"roundtrip_ffstar", ffstar},
                         {"roundtrip_fstarf", fstarf},
                         {"intertwining", intertwining},
                         {"kernel_vs_oracle", a.kernel_vs_oracle}};
  r.report["checks"] = {{"route_equivalence", a.route},
                        {"unitarity", bs.unitarity},
                        {"oracle_bound_states", n_oracle}};

  Json failures = Json::array();
  auto expect = [&](const char* name, double value, double limit) {
    if (!(value < limit)) failures.push_back(std::string(name) + " = " + fmt(value) + " (limit " + fmt(limit) + ")");
  };
  expect("plancherel", plancherel, tol.plancherel);
  expect("roundtrip_ffstar", ffstar, tol.roundtrip);
  expect("roundtrip_fstarf", fstarf, tol.roundtrip);
  expect("intertwining", intertwining, tol.intertwining);
  expect("kernel_vs_oracle", a.kernel_vs_oracle, tol.kernel_vs_oracle);
  expect("route_equivalence", a.route, tol.route);
  expect("unitarity", bs.unitarity, tol.unitarity);
  if (n_states != n_oracle)
    failures.push_back("bound state count " + std::to_string(n_states) + " differs from oracle count " +
                       std::to_string(n_oracle));
  r.report["tolerances"] = {{"plancherel", tol.plancherel},           {"roundtrip", tol.roundtrip},
                            {"intertwining", tol.intertwining},       {"kernel_vs_oracle", tol.kernel_vs_oracle},
                            {"route_equivalence", tol.route},         {"unitarity", tol.unitarity}};
  r.report["failures"] = failures;
  r.report["status"] = failures.empty() ? "pass" : "fail";
  write_report(r);

  for (const auto& msg : failures) std::cerr << "validate: " << msg.get<std::string>() << '\n';
  return failures.empty() ? kOk : kToleranceFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distorted Fourier transform and spectral kernels of 1D Schrodinger operators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dsft_version()));

  std::string config_path, out_dir = ".";
  unsigned threads = 0;
  int (*handler)(Run&) = nullptr;

  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(Run&);
  };
  const Entry entries[] = {
      {"eigenfunctions", "tabulate e(x, xi) on the lattice", cmd_eigenfunctions},
      {"scattering", "transmission and reflection coefficients", cmd_scattering},
      {"boundstates", "point spectrum and eigenfunctions", cmd_boundstates},
      {"transform", "forward transform of the configured function", cmd_transform},
      {"kernel", "assemble the spectral kernel K = K_ac + K_p", cmd_kernel},
      {"apply", "apply phi(H) by kernel, by transform and by the oracle", cmd_apply},
      {"validate", "run the identity checks and compare with tolerances", cmd_validate},
  };
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--config", config_path, "key = value run configuration")->required();
    sub->add_option("--out", out_dir, "output directory (created if missing)");
    sub->add_option("--threads", threads, "worker threads, 0 = all cores");
    sub->callback([&handler, fn = e.fn] { handler = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  Run run;
  try {
    run.cfg = dsft::cli::load_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "dsft: config error: " << e.what() << '\n';
    return kConfigError;
  }
  run.grid = {run.cfg.x_min, run.cfg.x_max, run.cfg.n};
  run.out_dir = out_dir;
  dsft_set_threads(threads);

  try {
    std::filesystem::create_directories(run.out_dir);
    return handler(run);
  } catch (const ConfigError& e) {
    std::cerr << "dsft: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const LibraryError& e) {
    std::cerr << "dsft: error " << e.code << ": " << e.what() << '\n';
    return kLibraryError;
  } catch (const std::exception& e) {
    std::cerr << "dsft: " << e.what() << '\n';
    return kLibraryError;
  }
}
