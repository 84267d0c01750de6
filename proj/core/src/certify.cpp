#include "asymptotica/certify.hpp"

#include "asymptotica/bump.hpp"
#include "asymptotica/errors.hpp"
#include "bump_impl.hpp"
#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace asymptotica::mollifier {

namespace {

// An axis sum in the normalized variable u = s_min x:
//   axis(x) = sum_j c_j phi0(r_j u),  r_j = s_j / s_min >= 1.
struct NormalizedAxis {
  double s_min;
  std::vector<double> c;
  std::vector<double> r;
  double log_s_min;
};

NormalizedAxis normalize(const AxisSum& axis) {
  NormalizedAxis n;
  Rational s_min = axis.front().s;
  for (const auto& t : axis) s_min = std::min(s_min, t.s);
  n.s_min = to_double(s_min);
  n.log_s_min = std::log(to_double(numerator_of(s_min).convert_to<double>())) -
                std::log(denominator_of(s_min).convert_to<double>());
  for (const auto& t : axis) {
    n.c.push_back(to_double(t.c));
    n.r.push_back(to_double(t.s / s_min));
  }
  return n;
}

double axis_value(const NormalizedAxis& a, double u, int k) {
  double v = 0.0;
  for (std::size_t j = 0; j < a.c.size(); ++j) {
    v += a.c[j] * std::pow(a.r[j], k) * detail::bump0_derivative(a.r[j] * u, k);
  }
  return v;
}

std::vector<double> breakpoints(const NormalizedAxis& a) {
  std::vector<double> pts{-1.0, 1.0, 0.0};
  for (double r : a.r) {
    pts.push_back(-1.0 / r);
    pts.push_back(1.0 / r);
  }
  return pts;
}

// Integral of u^k axis over the line, in the normalized variable.
double axis_moment_normalized(const NormalizedAxis& a, int k, double tol) {
  return detail::integrate<double>([&](double u) { return std::pow(u, k) * axis_value(a, u, 0); }, breakpoints(a),
                                   tol);
}

// Integral of x^k axis(x) dx = s_min^(-k-1) * integral of u^k axis(u/s_min) du.
double axis_moment(const NormalizedAxis& a, int k, double tol) {
  return axis_moment_normalized(a, k, tol) * std::exp(-(k + 1) * a.log_s_min);
}

double axis_abs_integral(const NormalizedAxis& a, double tol) {
  return detail::integrate<double>([&](double u) { return std::abs(axis_value(a, u, 0)); }, breakpoints(a), tol) /
         a.s_min;
}

// log sup |axis^(k)| over the line.
double axis_log_sup(const NormalizedAxis& a, int k, int points) {
  double best = 0.0;
  for (double r : a.r) {
    best = std::max(best, sampled_sup([&](double u) { return axis_value(a, u, k); }, 0.0, 1.0 / r, points));
  }
  return std::log(best) + k * a.log_s_min;
}

std::vector<std::vector<int>> multi_indices(int d, int max_order) {
  std::vector<std::vector<int>> out;
  std::vector<int> alpha(static_cast<std::size_t>(d), 0);
  for (;;) {
    int total = 0;
    for (int a : alpha) total += a;
    if (total <= max_order) out.push_back(alpha);
    std::size_t i = 0;
    while (i < alpha.size() && ++alpha[i] > max_order) alpha[i++] = 0;
    if (i == alpha.size()) break;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int sa = 0, sb = 0;
    for (int v : a) sa += v;
    for (int v : b) sb += v;
    return sa != sb ? sa < sb : a < b;
  });
  return out;
}

std::string format(const std::vector<int>& alpha) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < alpha.size(); ++i) os << (i ? "," : "") << alpha[i];
  os << ")";
  return os.str();
}

// Nested integration of |sum of blocks| for trees that are not separable.
double nested_abs_integral(const Mollifier& phi, double tol) {
  const int d = phi.dim;
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(d));
  for (const auto& b : phi.flat) {
    for (int i = 0; i < d; ++i) {
      for (const auto& t : b.axes[static_cast<std::size_t>(i)]) {
        const double w = 1.0 / to_double(t.s);
        pts[static_cast<std::size_t>(i)].push_back(-w);
        pts[static_cast<std::size_t>(i)].push_back(w);
      }
    }
  }
  std::vector<double> x(static_cast<std::size_t>(d));
  std::function<double(int)> level = [&](int axis) -> double {
    return detail::integrate<double>(
        [&](double xi) {
          x[static_cast<std::size_t>(axis)] = xi;
          if (axis + 1 == d) return std::abs(eval(phi, x));
          return level(axis + 1);
        },
        pts[static_cast<std::size_t>(axis)], tol, {200000});
  };
  return level(0);
}

}  // namespace

bool CertReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const CertEntry& e) { return e.passed; });
}

double moment(const Mollifier& phi, const std::vector<int>& alpha, double quad_tol) {
  double total = 0.0;
  for (const auto& b : phi.flat) {
    double prod = to_double(b.coef);
    for (std::size_t i = 0; i < b.axes.size(); ++i) {
      const int k = alpha.empty() ? 0 : alpha[i];
      prod *= axis_moment(normalize(b.axes[i]), k, quad_tol);
    }
    total += prod;
  }
  return total;
}

double l1_norm(const Mollifier& phi, double quad_tol) {
  if (phi.flat.size() == 1) {
    const auto& b = phi.flat.front();
    double prod = std::abs(to_double(b.coef));
    for (const auto& axis : b.axes) prod *= axis_abs_integral(normalize(axis), quad_tol);
    return prod;
  }
  return nested_abs_integral(phi, quad_tol);
}

double log_derivative_sup(const Mollifier& phi, const std::vector<int>& alpha, int points) {
  if (phi.flat.size() == 1) {
    const auto& b = phi.flat.front();
    if (b.coef == 0) return -std::numeric_limits<double>::infinity();
    double log_sup = std::log(std::abs(to_double(b.coef)));
    for (std::size_t i = 0; i < b.axes.size(); ++i) {
      log_sup += axis_log_sup(normalize(b.axes[i]), alpha.empty() ? 0 : alpha[i], points);
    }
    return log_sup;
  }
  // Sum of blocks: sample a tensor grid over the support box at every scale.
  const int d = phi.dim;
  std::vector<double> scales;
  for (const auto& b : phi.flat) {
    for (const auto& axis : b.axes) {
      for (const auto& t : axis) scales.push_back(1.0 / to_double(t.s));
    }
  }
  std::sort(scales.begin(), scales.end());
  scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
  const int per_axis = d == 1 ? points : d == 2 ? 257 : 65;
  double best = 0.0;
  std::vector<double> x(static_cast<std::size_t>(d));
  for (double w : scales) {
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (;;) {
      for (int i = 0; i < d; ++i) x[static_cast<std::size_t>(i)] = -w + 2 * w * idx[static_cast<std::size_t>(i)] / (per_axis - 1);
      best = std::max(best, std::abs(eval(phi, x, alpha)));
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == per_axis) idx[i++] = 0;
      if (i == idx.size()) break;
    }
  }
  return best > 0 ? std::log(best) : -std::numeric_limits<double>::infinity();
}

CertReport certify(const Mollifier& phi, int n, const CertOptions& options) {
  CertReport report{n, {}};
  const int d = phi.dim;
  const double R = phi.radius;

  // Evenness and realness on a deterministic grid that resolves every scale.
  {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> widths;
    for (const auto& b : phi.flat) {
      for (const auto& axis : b.axes) {
        for (const auto& t : axis) widths.push_back(1.0 / to_double(t.s));
      }
    }
    double worst = 0.0, scale = 0.0;
    bool finite = true;
    for (double w : widths) {
      for (int k = 0; k < 64; ++k) {
        std::vector<double> x(static_cast<std::size_t>(d)), mx(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
          x[static_cast<std::size_t>(i)] = w * unit(rng);
          mx[static_cast<std::size_t>(i)] = -x[static_cast<std::size_t>(i)];
        }
        const double a = eval(phi, x), b = eval(phi, mx);
        finite = finite && std::isfinite(a) && std::isfinite(b);
        worst = std::max(worst, std::abs(a - b));
        scale = std::max(scale, std::abs(a));
      }
    }
    const double rel = scale > 0 ? worst / scale : worst;
    report.entries.push_back({"evenness", rel <= 1e-12, rel, 1e-12, "max |phi(x) - phi(-x)| / max |phi|"});
    report.entries.push_back({"realness", finite, finite ? 1.0 : 0.0, 1.0,
                              "rational coefficients; finite real values on the grid"});
  }

  const double radius_bound = n > 0 ? 1.0 / n : std::numeric_limits<double>::infinity();
  report.entries.push_back({"radius", R <= radius_bound * (1 + 1e-15), R, radius_bound, "R_phi <= 1/n"});

  const double mass = moment(phi, {}, options.quad_tol);
  report.entries.push_back(
      {"mass", std::abs(mass - 1.0) <= options.mass_tol, mass, options.mass_tol, "|integral - 1| <= tol"});

  {
    double worst = 0.0;
    std::string where = "none";
    for (const auto& alpha : multi_indices(d, n)) {
      int order = 0;
      for (int a : alpha) order += a;
      if (order == 0) continue;
      const double mo = std::abs(moment(phi, alpha, options.quad_tol));
      if (mo >= worst) {
        worst = mo;
        where = format(alpha);
      }
    }
    report.entries.push_back({"moments", worst <= options.moment_tol, worst, options.moment_tol,
                              "max |integral x^alpha phi| for 1 <= |alpha| <= n, worst at " + where});
  }

  {
    const double l1 = l1_norm(phi, options.quad_tol);
    const double bound = n > 0 ? 1.0 + 1.0 / n + options.l1_slack : std::numeric_limits<double>::infinity();
    report.entries.push_back({"l1", l1 <= bound, l1, bound, "L1 <= 1 + 1/n"});
  }

  {
    // Worst log margin  log sup - log bound  over |alpha| <= n.
    double worst_margin = -std::numeric_limits<double>::infinity();
    double worst_sup = 0.0, worst_bound = 0.0;
    std::string where;
    for (const auto& alpha : multi_indices(d, n)) {
      int order = 0;
      for (int a : alpha) order += a;
      const double log_sup = log_derivative_sup(phi, alpha, options.sup_points);
      const double log_bound = -2.0 * (order + d) * std::log(R);
      if (log_sup - log_bound >= worst_margin) {
        worst_margin = log_sup - log_bound;
        worst_sup = log_sup;
        worst_bound = log_bound;
        where = format(alpha);
      }
    }
    report.entries.push_back({"derivatives", worst_margin <= 0.0, worst_sup, worst_bound,
                              "log sup |d^alpha phi| <= -2(|alpha| + d) log R (sampled), tightest at " + where});
  }
  return report;
}

}  // namespace asymptotica::mollifier
