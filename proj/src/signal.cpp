#include "zsfast/signal.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "zsfast/errors.hpp"

namespace zsfast {

namespace {

// Tolerance for "is an integer" and "is a node" checks, relative to the
// quantities involved.
constexpr double kGridTol = 1e-9;

long long integral_or_throw(double x, const char* what) {
  double r = std::round(x);
  if (std::abs(x - r) > kGridTol * std::max(1.0, std::abs(x)))
    throw GridError(std::string(what) + " = " + std::to_string(x) +
                    " is not an integer; T1 and T2 must be multiples of h");
  return static_cast<long long>(r);
}

}  // namespace

double SignalGrid::time(long long idx) const { return T1 + static_cast<double>(idx) * h / nu; }

long long SignalGrid::index(double t) const {
  double x = (t - T1) * nu / h;
  long long i = integral_or_throw(x, "node index");
  return i;
}

cplx SignalGrid::at_index(long long idx) const {
  long long n = static_cast<long long>(samples.size());
  if (boundary == Boundary::Periodic) {
    long long period = n - 1;
    long long r = idx % period;
    if (r < 0) r += period;
    return samples[static_cast<std::size_t>(r)];
  }
  if (idx < 0 || idx >= n) return 0.0;
  return samples[static_cast<std::size_t>(idx)];
}

cplx SignalGrid::at(long long n, long long k) const { return at_index(n * nu + k); }

SignalGrid make_grid(std::vector<cplx> samples, double T1, double T2, long long N_seg, int nu, int kappa,
                     Boundary boundary) {
  if (N_seg < 1) throw GridError("N_seg must be >= 1");
  if (nu < 1) throw GridError("nu must be >= 1");
  if (!(T2 > T1)) throw GridError("T2 must exceed T1");
  if (kappa != 1 && kappa != -1) throw GridError("kappa must be +1 or -1");
  if (samples.size() != static_cast<std::size_t>(nu * N_seg + 1))
    throw GridError("expected " + std::to_string(nu * N_seg + 1) + " samples, got " + std::to_string(samples.size()));
  SignalGrid g;
  g.samples = std::move(samples);
  g.T1 = T1;
  g.T2 = T2;
  g.h = (T2 - T1) / static_cast<double>(N_seg);
  g.nu = nu;
  g.N_seg = N_seg;
  g.kappa = kappa;
  g.boundary = boundary;
  g.ell_plus = integral_or_throw(T2 / g.h, "T2/h");
  g.ell_minus = integral_or_throw(-T1 / g.h, "-T1/h");
  if (g.ell_plus + g.ell_minus != N_seg) throw GridError("inconsistent grid bookkeeping");
  for (auto& v : g.samples)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw GridError("non-finite sample");
  return g;
}

SignalGrid sample_function(const std::function<cplx(double)>& q, double T1, double T2, long long N_seg, int nu,
                           int kappa, Boundary boundary) {
  if (N_seg < 1 || nu < 1) throw GridError("N_seg and nu must be >= 1");
  long long n = nu * N_seg;
  double dt = (T2 - T1) / static_cast<double>(n);
  std::vector<cplx> s(static_cast<std::size_t>(n + 1));
  for (long long i = 0; i <= n; ++i) s[static_cast<std::size_t>(i)] = q(T1 + static_cast<double>(i) * dt);
  if (boundary == Boundary::Periodic) s[static_cast<std::size_t>(n)] = s[0];
  return make_grid(std::move(s), T1, T2, N_seg, nu, kappa, boundary);
}

cplx SignalSpec::value(double t) const {
  switch (kind) {
    case Kind::Rectangle: {
      double eps = kGridTol * std::max({1.0, std::abs(support_lo), std::abs(support_hi)});
      return (t >= support_lo - eps && t < support_hi - eps) ? amplitude : cplx(0.0);
    }
    case Kind::Sech:
      return amplitude / std::cosh(t / width);
    case Kind::Samples:
      break;
  }
  throw UnsupportedError("sampled signals have no analytic value");
}

SignalGrid sample_signal(const SignalSpec& spec, double T1, double T2, long long N_seg, int nu) {
  return sample_signal(spec, T1, T2, N_seg, nu, spec.kappa, spec.boundary);
}

SignalGrid sample_signal(const SignalSpec& spec, double T1, double T2, long long N_seg, int nu, int kappa,
                         Boundary boundary) {
  if (N_seg < 1 || nu < 1) throw GridError("N_seg and nu must be >= 1");
  if (!(T2 > T1)) throw GridError("T2 must exceed T1");
  if (spec.kind == SignalSpec::Kind::Rectangle) {
    if (!std::isfinite(spec.amplitude.real()) || !std::isfinite(spec.amplitude.imag()))
      throw GridError("amplitude must be finite");
    if (spec.support_lo < T1 - kGridTol || spec.support_hi > T2 + kGridTol || spec.support_hi < spec.support_lo)
      throw GridError("rectangle support must lie inside [T1, T2]");
  }
  // Geometry first so a bad grid fails before any file access.
  double h = (T2 - T1) / static_cast<double>(N_seg);
  integral_or_throw(T2 / h, "T2/h");
  integral_or_throw(-T1 / h, "-T1/h");

  if (spec.kind == SignalSpec::Kind::Samples) {
    SampleFile f = load_samples_csv(spec.file);
    long long n = nu * N_seg;
    if (static_cast<long long>(f.q.size()) != n + 1)
      throw GridError("sample file has " + std::to_string(f.q.size()) + " rows, grid needs " + std::to_string(n + 1));
    double dt = (T2 - T1) / static_cast<double>(n);
    for (long long i = 0; i <= n; ++i) {
      double t = T1 + static_cast<double>(i) * dt;
      if (std::abs(f.t[static_cast<std::size_t>(i)] - t) > kGridTol * std::max(1.0, std::abs(t)) + 1e-6 * dt)
        throw GridError("sample file times do not match the grid nodes");
    }
    if (boundary == Boundary::Periodic) f.q.back() = f.q.front();
    return make_grid(std::move(f.q), T1, T2, N_seg, nu, kappa, boundary);
  }

  if (boundary == Boundary::Periodic) {
    double period = T2 - T1;
    auto wrapped = [&](double t) {
      double u = std::fmod(t - T1, period);
      if (u < 0) u += period;
      return spec.value(T1 + u);
    };
    return sample_function(wrapped, T1, T2, N_seg, nu, kappa, boundary);
  }
  return sample_function([&](double t) { return spec.value(t); }, T1, T2, N_seg, nu, kappa, boundary);
}

double l1_norm(const SignalGrid& g) {
  if (g.samples.size() < 2) return 0.0;
  double dt = g.h / g.nu, s = 0.0;
  for (std::size_t i = 0; i < g.samples.size(); ++i) {
    double w = (i == 0 || i + 1 == g.samples.size()) ? 0.5 : 1.0;
    s += w * std::abs(g.samples[i]);
  }
  return s * dt;
}

SampleFile load_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sample file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty sample file '" + path + "'");
  auto strip = [](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    return s;
  };
  if (strip(line) != "t,re,im") throw IoError("sample file must start with header t,re,im");
  SampleFile f;
  while (std::getline(in, line)) {
    if (strip(line).empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
      throw IoError("malformed row in '" + path + "': " + line);
    try {
      f.t.push_back(std::stod(a));
      f.q.emplace_back(std::stod(b), std::stod(c));
    } catch (const std::exception&) {
      throw IoError("malformed number in '" + path + "': " + line);
    }
  }
  if (f.t.size() < 2) throw IoError("sample file needs at least two rows");
  double dt = f.t[1] - f.t[0];
  for (std::size_t i = 1; i < f.t.size(); ++i) {
    double d = f.t[i] - f.t[i - 1];
    if (!(d > 0)) throw IoError("sample times must be strictly increasing");
    if (std::abs(d - dt) > 1e-6 * std::abs(dt)) throw IoError("sample times must be uniformly spaced");
  }
  return f;
}

namespace {

cplx parse_complex(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
  throw IoError("complex value must be a number, [re, im] or {re, im}");
}

}  // namespace

SignalSpec signal_spec_from_json(const std::string& text, const std::string& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw IoError(std::string("invalid signal JSON: ") + e.what());
  }
  SignalSpec s;
  try {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "rectangle" || kind == "zero") {
      s.kind = SignalSpec::Kind::Rectangle;
      s.amplitude = kind == "zero" ? cplx(0.0) : parse_complex(j.at("amplitude"));
      if (j.contains("support")) {
        s.support_lo = j["support"].at(0).get<double>();
        s.support_hi = j["support"].at(1).get<double>();
      }
    } else if (kind == "sech") {
      s.kind = SignalSpec::Kind::Sech;
      s.amplitude = parse_complex(j.at("amplitude"));
      s.width = j.value("width", 1.0);
      if (!(s.width > 0)) throw IoError("sech width must be positive");
    } else if (kind == "samples") {
      s.kind = SignalSpec::Kind::Samples;
      std::filesystem::path p = j.at("file").get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      s.file = p.string();
    } else {
      throw IoError("unknown signal kind '" + kind + "' (rectangle, sech, samples, zero)");
    }
    if (j.contains("T1")) s.T1 = j["T1"].get<double>();
    if (j.contains("T2")) s.T2 = j["T2"].get<double>();
    if (j.contains("nseg")) s.N_seg = j["nseg"].get<long long>();
    if (j.contains("kappa")) s.kappa = j["kappa"].get<int>();
    if (j.contains("boundary")) {
      std::string b = j["boundary"].get<std::string>();
      if (b == "vanishing")
        s.boundary = Boundary::Vanishing;
      else if (b == "periodic")
        s.boundary = Boundary::Periodic;
      else
        throw IoError("boundary must be 'vanishing' or 'periodic'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad signal spec: ") + e.what());
  }
  if (s.kind == SignalSpec::Kind::Rectangle && s.support_hi == s.support_lo && std::isfinite(s.T1) &&
      std::isfinite(s.T2) && s.amplitude != cplx(0.0)) {
    s.support_lo = s.T1;
    s.support_hi = s.T2;
  }
  if (s.kappa != 1 && s.kappa != -1) throw IoError("kappa must be +1 or -1");
  return s;
}

SignalSpec load_signal_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open signal spec '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return signal_spec_from_json(ss.str(), std::filesystem::path(path).parent_path().string());
}

const char* boundary_name(Boundary b) { return b == Boundary::Periodic ? "periodic" : "vanishing"; }

}  // namespace zsfast
