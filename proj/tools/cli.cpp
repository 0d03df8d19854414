#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "zsfast/zsfast.hpp"

namespace zsfast::cli {

namespace {

using nlohmann::json;

json cj(cplx v) { return json::array({v.real(), v.imag()}); }

struct Loaded {
  SignalSpec spec;
  SignalGrid grid;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

int lcm_nu(const std::vector<Scheme>& ss) {
  int nu = 1;
  for (auto& s : ss) nu = std::lcm(nu, s.sample_nu);
  return nu;
}

void time_range(const SignalSpec& spec, double& T1, double& T2, long long& rows) {
  T1 = spec.T1;
  T2 = spec.T2;
  rows = 0;
  if (spec.kind == SignalSpec::Kind::Samples) {
    SampleFile f = load_samples_csv(spec.file);
    rows = static_cast<long long>(f.q.size());
    if (!std::isfinite(T1)) T1 = f.t.front();
    if (!std::isfinite(T2)) T2 = f.t.back();
  }
  if (!std::isfinite(T1) || !std::isfinite(T2)) throw GridError("signal spec must give T1 and T2");
}

Loaded load(const RunConfig& c, const std::vector<Scheme>& ss, Boundary forced, bool force_boundary,
            long long default_nseg = 1024) {
  if (c.signal.empty()) throw UsageError("--signal is required");
  Loaded L;
  L.spec = load_signal_spec(c.signal);
  double T1, T2;
  long long rows;
  time_range(L.spec, T1, T2, rows);
  int nu = c.nu > 0 ? c.nu : lcm_nu(ss);
  long long nseg = c.nseg > 0 ? c.nseg : L.spec.N_seg;
  if (nseg <= 0) {
    nseg = rows > 1 ? (rows - 1) / nu : default_nseg;
  }
  int kappa = c.kappa != 0 ? c.kappa : L.spec.kappa;
  if (kappa != 1 && kappa != -1) throw UsageError("--kappa must be +1 or -1");
  Boundary b = force_boundary ? forced : L.spec.boundary;
  L.grid = sample_signal(L.spec, T1, T2, nseg, nu, kappa, b);
  return L;
}

json resolved_json(const SignalGrid& g) {
  return {{"T1", g.T1}, {"T2", g.T2}, {"h", g.h},         {"nseg", g.N_seg},
          {"nu", g.nu}, {"kappa", g.kappa}, {"boundary", boundary_name(g.boundary)}};
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw IoError("cannot write '" + c.out + "'");
  f << text;
  if (!f) throw IoError("write to '" + c.out + "' failed");
}

std::size_t default_nprime(const ScatteringPoly& sp) {
  std::size_t need = std::max({sp.P1.size(), sp.P2.size(), sp.D.size(), static_cast<std::size_t>(sp.N_seg)});
  std::size_t per = (need + static_cast<std::size_t>(sp.nu) - 1) / static_cast<std::size_t>(sp.nu);
  std::size_t n = 1;
  while (n < per) n *= 2;
  return n;
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (auto& it : items) {
    std::stringstream ss(it);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

json config_json(const RunConfig& c) {
  return {{"command", c.command}, {"signal", c.signal},   {"scheme", c.scheme}, {"nseg", c.nseg},
          {"nu", c.nu},           {"nprime", c.nprime},   {"kappa", c.kappa},   {"out", c.out},
          {"format", c.format},   {"threads", c.threads}, {"hs", c.hs},         {"schemes", c.schemes},
          {"t0", c.t0},           {"allow_rational", c.allow_rational}};
}

int cmd_continuous(const RunConfig& c, std::ostream& out, std::ostream&) {
  Scheme s = make_scheme(c.scheme);
  Loaded L = load(c, {s}, Boundary::Vanishing, false);
  ScatteringPoly sp = compute_scattering(L.grid, s);
  std::size_t np = c.nprime > 0 ? static_cast<std::size_t>(c.nprime) : default_nprime(sp);
  ContinuousSpectrum cs = continuous_spectrum(sp, np);

  json cfg = config_json(c);
  cfg["resolved"] = resolved_json(L.grid);
  cfg["resolved"]["nprime"] = np;
  if (c.format == "csv") {
    std::ostringstream os;
    os << "# config: " << cfg.dump() << "\n";
    os << "xi,a_re,a_im,b_re,b_im,rho_re,rho_im\n" << std::setprecision(17);
    for (std::size_t k = 0; k < cs.xi.size(); ++k)
      os << cs.xi[k] << ',' << cs.a[k].real() << ',' << cs.a[k].imag() << ',' << cs.b[k].real() << ','
         << cs.b[k].imag() << ',' << cs.rho[k].real() << ',' << cs.rho[k].imag() << '\n';
    emit(c, os.str(), out);
    return 0;
  }
  json j;
  j["config"] = cfg;
  j["scheme"] = s.id;
  j["h"] = L.grid.h;
  j["nu"] = L.grid.nu;
  j["N"] = L.grid.N_seg;
  j["xi"] = cs.xi;
  auto parts = [&](const std::vector<cplx>& v, const char* re, const char* im) {
    std::vector<double> r(v.size()), i(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = v[k].real(), i[k] = v[k].imag();
    j[re] = r;
    j[im] = i;
  };
  parts(cs.a, "a_re", "a_im");
  parts(cs.b, "b_re", "b_im");
  parts(cs.rho, "rho_re", "rho_im");
  emit(c, j.dump() + "\n", out);
  return 0;
}

int cmd_discrete(const RunConfig& c, std::ostream& out, std::ostream&) {
  Scheme s = make_scheme(c.scheme);
  Loaded L = load(c, {s}, Boundary::Vanishing, false);
  ScatteringPoly sp = compute_scattering(L.grid, s);
  std::vector<cplx> z = find_eigenvalues(L.grid, s, sp);
  DiscreteSpectrum ds = norming_constants(L.grid, s, sp, z);

  json cfg = config_json(c);
  cfg["resolved"] = resolved_json(L.grid);
  if (c.format == "csv") {
    std::ostringstream os;
    os << "# config: " << cfg.dump() << "\n";
    os << "zeta_re,zeta_im,b_re,b_im,rho_re,rho_im,residual\n" << std::setprecision(17);
    for (auto& p : ds.pairs)
      os << p.zeta.real() << ',' << p.zeta.imag() << ',' << p.b.real() << ',' << p.b.imag() << ',' << p.rho.real()
         << ',' << p.rho.imag() << ',' << p.residual << '\n';
    emit(c, os.str(), out);
    return 0;
  }
  json arr = json::array();
  for (auto& p : ds.pairs)
    arr.push_back({{"zeta", cj(p.zeta)}, {"b", cj(p.b)}, {"rho", cj(p.rho)}, {"residual", p.residual}});
  json j{{"config", cfg}, {"eigenvalues", arr}};
  emit(c, j.dump(2) + "\n", out);
  return 0;
}

int cmd_periodic(const RunConfig& c, std::ostream& out, std::ostream&) {
  Scheme s = make_scheme(c.scheme);
  if (s.is_lmm())
    throw UnsupportedError("LMM unsupported for periodic: scheme " + s.id +
                           " handles vanishing boundaries only; use im or an explicit Runge-Kutta scheme");
  Loaded L = load(c, {s}, Boundary::Periodic, true);
  MonodromyOptions mo;
  mo.shift = c.t0;
  mo.allow_rational = c.allow_rational;
  Monodromy m = monodromy_poly(L.grid, s, mo);
  MainSpectrum ms = main_spectrum(m);

  json cfg = config_json(c);
  cfg["resolved"] = resolved_json(L.grid);
  if (c.format == "csv") {
    std::ostringstream os;
    os << "# config: " << cfg.dump() << "\n";
    os << "zeta_re,zeta_im,label,residual\n" << std::setprecision(17);
    for (auto& p : ms.points)
      os << p.zeta.real() << ',' << p.zeta.imag() << ',' << p.label << ',' << p.residual << '\n';
    emit(c, os.str(), out);
    return 0;
  }
  json arr = json::array();
  for (auto& p : ms.points) arr.push_back({{"zeta", cj(p.zeta)}, {"label", p.label}, {"residual", p.residual}});
  json j{{"config", cfg}, {"main_spectrum", arr}};
  emit(c, j.dump(2) + "\n", out);
  return 0;
}

int cmd_bench(const RunConfig& c, std::ostream& out, std::ostream&) {
  std::vector<std::string> names = c.schemes.empty() ? std::vector<std::string>{c.scheme} : c.schemes;
  std::vector<Scheme> ss;
  for (auto& n : names) ss.push_back(make_scheme(n));
  if (c.hs < 3) throw UsageError("--hs must be at least 3");
  if (c.signal.empty()) throw UsageError("--signal is required");
  SignalSpec spec = load_signal_spec(c.signal);
  if (spec.kind == SignalSpec::Kind::Samples) throw UnsupportedError("bench needs an analytic signal spec");
  double T1, T2;
  long long rows;
  time_range(spec, T1, T2, rows);
  const long long n0 = c.nseg > 0 ? c.nseg : (spec.N_seg > 0 ? spec.N_seg : 128);
  const int nu = c.nu > 0 ? c.nu : lcm_nu(ss);
  const int kappa = c.kappa != 0 ? c.kappa : spec.kappa;
  const long long nmax = n0 << (c.hs - 1);

  const double h0 = (T2 - T1) / static_cast<double>(n0);
  const double xmax = std::min(2.0, 0.25 * std::numbers::pi / h0);
  std::vector<cplx> xi(65);
  for (int k = 0; k < 65; ++k) xi[static_cast<std::size_t>(k)] = -xmax + 2.0 * xmax * k / 64.0;
  auto q = [&spec](double t) { return spec.value(t); };
  auto ref = oracle::smooth_reference(q, T1, T2, 16 * nmax, kappa, xi);

  json rows_j = json::array(), fits = json::object(), scaling = json::object();
  std::ostringstream tab;
  tab << std::left << std::setw(12) << "scheme" << std::setw(10) << "N" << std::setw(14) << "h" << std::setw(14)
      << "error" << std::setw(12) << "time_s" << "\n";
  for (auto& s : ss) {
    std::vector<std::pair<double, double>> he, nt;
    for (int k = 0; k < c.hs; ++k) {
      long long N = n0 << k;
      SignalGrid g = sample_signal(spec, T1, T2, N, nu, kappa, Boundary::Vanishing);
      auto t0 = std::chrono::steady_clock::now();
      ScatteringPoly sp = compute_scattering(g, s);
      double dt = seconds_since(t0);
      double err = 0.0;
      for (std::size_t i = 0; i < xi.size(); ++i) err = std::max(err, std::abs(sp.a(xi[i]) - ref[i].first));
      he.push_back({g.h, err});
      nt.push_back({static_cast<double>(N), std::max(dt, 1e-9)});
      rows_j.push_back({{"scheme", s.id}, {"N", N}, {"h", g.h}, {"error", err}, {"time", dt}});
      tab << std::left << std::setw(12) << s.id << std::setw(10) << N << std::setw(14) << std::setprecision(6) << g.h
          << std::setw(14) << std::setprecision(4) << err << std::setw(12) << dt << "\n";
    }
    // Points at the rounding floor carry no order information.
    std::vector<std::pair<double, double>> used;
    for (auto& p : he)
      if (p.second > 1e-11) used.push_back(p);
    if (used.size() < 3) used.assign(he.begin(), he.begin() + 3);
    double p = oracle::fit_convergence_order(used);
    double slope = oracle::fit_convergence_order(nt);
    fits[s.id] = {{"order", p}, {"nominal", s.order}, {"points", used.size()}};
    scaling[s.id] = {{"slope", slope}};
    tab << std::left << std::setw(12) << s.id << "fitted p = " << std::setprecision(3) << p << " (nominal " << s.order
        << "), time slope = " << slope << "\n";
  }
  out << tab.str();
  if (!c.out.empty()) {
    json cfg = config_json(c);
    cfg["resolved"] = {{"T1", T1}, {"T2", T2}, {"nseg0", n0}, {"nu", nu}, {"kappa", kappa}, {"ref_pieces", 16 * nmax}};
    json j{{"config", cfg}, {"table", rows_j}, {"fits", fits}, {"scaling", scaling}};
    std::ofstream f(c.out);
    if (!f) throw IoError("cannot write '" + c.out + "'");
    f << j.dump(2) << "\n";
  }
  return 0;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"zsfast: nonlinear Fourier transform by fast transfer-matrix products"};
  app.require_subcommand(1);
  RunConfig c;
  std::vector<std::string> schemes_raw;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--signal", c.signal, "signal spec (JSON)");
    sub->add_option("--scheme", c.scheme, "discretization scheme")->capture_default_str();
    sub->add_option("--nseg", c.nseg, "number of segments (default: from the spec)");
    sub->add_option("--nu", c.nu, "samples per segment (default: what the scheme needs)");
    sub->add_option("--kappa", c.kappa, "-1 focusing, +1 defocusing (default: from the spec)");
    sub->add_option("--out", c.out, "output file (default: stdout)");
    sub->add_option("--format", c.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--threads", c.threads, "worker threads (default: ZSFAST_THREADS or all)");
  };
  CLI::App* cont = app.add_subcommand("continuous", "a, b and rho on the real axis");
  common(cont);
  cont->add_option("--nprime", c.nprime, "number of xi samples (power of two)");
  CLI::App* disc = app.add_subcommand("discrete", "eigenvalues and norming constants");
  common(disc);
  CLI::App* per = app.add_subcommand("periodic", "main spectrum of a periodic signal");
  common(per);
  per->add_option("--t0", c.t0, "starting segment of the period");
  per->add_flag("--allow-rational", c.allow_rational, "admit schemes with a zeta-dependent denominator");
  CLI::App* bench = app.add_subcommand("bench", "convergence and runtime sweep");
  common(bench);
  bench->add_option("--hs", c.hs, "number of dyadic step sizes")->capture_default_str();
  bench->add_option("--schemes", schemes_raw, "comma separated scheme list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  c.schemes = split_list(schemes_raw);

  if (c.threads <= 0) {
    if (const char* env = std::getenv("ZSFAST_THREADS")) c.threads = std::atoi(env);
  }
  if (c.threads > 0) set_threads(c.threads);

  try {
    if (cont->parsed()) {
      c.command = "continuous";
      return cmd_continuous(c, out, err);
    }
    if (disc->parsed()) {
      c.command = "discrete";
      return cmd_discrete(c, out, err);
    }
    if (per->parsed()) {
      c.command = "periodic";
      return cmd_periodic(c, out, err);
    }
    c.command = "bench";
    return cmd_bench(c, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CatalogError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const GridError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SizeError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << "\n"
        << "hint: try a smaller step size (larger --nseg) or a lower-order scheme\n";
    return 3;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace zsfast::cli
