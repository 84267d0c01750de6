#include "asymptotica/bump.hpp"

#include "asymptotica/errors.hpp"
#include "bump_impl.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace asymptotica {

namespace detail {

const std::vector<std::vector<BigInt>>& bump_derivative_polynomials() {
  static const std::vector<std::vector<BigInt>> polys = [] {
    std::vector<std::vector<BigInt>> out{{BigInt(1)}};
    for (int k = 0; k < kMaxBumpDerivative; ++k) {
      const auto& p = out.back();
      std::vector<BigInt> next(p.size() + 4, BigInt(0));
      // P' (1 - 2x^2 + x^4)
      for (std::size_t j = 1; j < p.size(); ++j) {
        BigInt d = p[j] * static_cast<long long>(j);
        next[j - 1] += d;
        next[j + 1] -= 2 * d;
        next[j + 3] += d;
      }
      // 4k x (1 - x^2) P - 2x P
      for (std::size_t j = 0; j < p.size(); ++j) {
        next[j + 1] += (4 * k - 2) * p[j];
        next[j + 3] -= 4 * k * p[j];
      }
      while (next.size() > 1 && next.back() == 0) next.pop_back();
      out.push_back(std::move(next));
    }
    return out;
  }();
  return polys;
}

}  // namespace detail

double bump_normalization() { return detail::bump_tables<double>().c; }

double bump0(double x) { return detail::bump0(x); }

double bump0_derivative(double x, int k) {
  if (k < 0 || k > max_bump_derivative()) throw DomainMismatch("bump derivative order out of range");
  return detail::bump0_derivative(x, k);
}

double bump0_antiderivative(double x) { return detail::bump0_antiderivative(x); }

int max_bump_derivative() { return detail::kMaxBumpDerivative; }

double sampled_sup(const std::function<double(double)>& f, double lo, double hi, int points) {
  double best = 0.0;
  double arg = lo;
  const double h = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double x = lo + h * i;
    const double v = std::abs(f(x));
    if (v > best) {
      best = v;
      arg = x;
    }
  }
  // One refinement pass: a finer grid around the best sample.
  const double a = std::max(lo, arg - h), b = std::min(hi, arg + h);
  for (int i = 0; i <= 256; ++i) best = std::max(best, std::abs(f(a + (b - a) * i / 256.0)));
  return best;
}

double bump_derivative_sup(int k) {
  static std::array<double, detail::kMaxBumpDerivative + 1> cache{};
  static std::once_flag once;
  std::call_once(once, [] {
    for (int j = 0; j <= detail::kMaxBumpDerivative; ++j) {
      // |phi0^(k)| is even, so [0, 1] suffices.
      cache[j] = sampled_sup([j](double x) { return detail::bump0_derivative(x, j); }, 0.0, 1.0, 4096);
    }
  });
  if (k < 0 || k > detail::kMaxBumpDerivative) throw DomainMismatch("bump derivative order out of range");
  return cache[k];
}

}  // namespace asymptotica
