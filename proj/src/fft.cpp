#include "zsfast/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "zsfast/errors.hpp"

namespace zsfast {

namespace {

struct Plan {
  std::size_t n;
  std::vector<std::size_t> rev;
  std::vector<cplx> tw;  // e^{-2πik/n}, k < n/2
};

std::shared_ptr<const Plan> make_plan(std::size_t n) {
  auto p = std::make_shared<Plan>();
  p->n = n;
  p->rev.resize(n);
  int bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b)
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    p->rev[i] = r;
  }
  p->tw.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    p->tw[k] = {std::cos(ang), std::sin(ang)};
  }
  return p;
}

std::shared_ptr<const Plan> plan_for(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::shared_ptr<const Plan>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto p = make_plan(n);
  cache.emplace(n, p);
  return p;
}

}  // namespace

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft(cplx* a, std::size_t n, bool inverse) {
  if (!is_pow2(n)) throw SizeError("fft size must be a power of two, got " + std::to_string(n));
  if (n == 1) return;
  auto plan = plan_for(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = plan->rev[i];
    if (i < r) std::swap(a[i], a[r]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::size_t half = len / 2, step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        cplx w = plan->tw[k * step];
        if (inverse) w = std::conj(w);
        cplx u = a[i + k], v = a[i + k + half] * w;
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
  if (inverse) {
    double s = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) a[i] *= s;
  }
}

void fft(std::vector<cplx>& a, bool inverse) { fft(a.data(), a.size(), inverse); }

}  // namespace zsfast
