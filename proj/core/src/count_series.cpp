#include "fringe/count_series.hpp"

#include <cmath>
#include <stdexcept>

#include "fringe/simply_generated.hpp"

namespace fringe {

using boost::multiprecision::cpp_int;

namespace {

std::vector<cpp_int> polya_series(std::uint32_t K) {
  // A000081-style recurrence: n * u_{n+1} = sum_{k=1}^{n} (sum_{d|k} d u_d) u_{n-k+1}.
  std::vector<cpp_int> u(K + 1), c(K + 1);
  if (K >= 1) u[1] = 1;
  for (std::uint32_t n = 1; n < K; ++n) {
    c[n] = 0;
    for (std::uint32_t d = 1; d <= n; ++d)
      if (n % d == 0) c[n] += d * u[d];
    cpp_int acc = 0;
    for (std::uint32_t k = 1; k <= n; ++k)
      if (c[k] != 0 && u[n - k + 1] != 0) acc += c[k] * u[n - k + 1];
    cpp_int q, rem;
    divide_qr(acc, cpp_int(n), q, rem);
    if (rem != 0) throw std::logic_error("polya recurrence lost integrality");
    u[n + 1] = std::move(q);
  }
  return u;
}

std::vector<cpp_int> restricted_series(const std::vector<int>& M, std::uint32_t K) {
  const int max_m = M.back();
  // h[m][e] = [x^e] MSET_m(U); p_i(x) = U(x^i); m h_m = sum_{i<=m} p_i h_{m-i}.
  std::vector<std::vector<cpp_int>> h(max_m + 1, std::vector<cpp_int>(K));
  std::vector<cpp_int> u(K + 1);

  auto p_coeff = [&](std::uint32_t i, std::uint32_t e) -> cpp_int {
    if (e == 0 || e % i != 0) return 0;
    return u[e / i];
  };

  for (std::uint32_t n = 1; n <= K; ++n) {
    const std::uint32_t D = n - 1;
    h[0][D] = (D == 0) ? 1 : 0;
    for (int m = 1; m <= max_m; ++m) {
      cpp_int acc = 0;
      for (int i = 1; i <= m; ++i) {
        // p_i is supported on multiples of i only
        for (std::uint32_t e = i; e <= D; e += i) {
          cpp_int pe = p_coeff(i, e);
          if (pe != 0 && h[m - i][D - e] != 0) acc += pe * h[m - i][D - e];
        }
      }
      cpp_int q, rem;
      divide_qr(acc, cpp_int(m), q, rem);
      if (rem != 0) throw std::logic_error("multiset recurrence lost integrality");
      h[m][D] = std::move(q);
    }
    cpp_int un = 0;
    for (int m : M) un += h[m][D];
    u[n] = std::move(un);
  }
  return u;
}

}  // namespace

std::vector<cpp_int> unordered_count_series(const DegreeSet& degrees, std::uint32_t K) {
  if (K == 0) throw std::invalid_argument("series length must be positive");
  if (!degrees.elements) return polya_series(K);
  return restricted_series(*degrees.elements, K);
}

std::vector<cpp_int> plane_count_series(const DegreeSet& degrees, std::uint32_t K) {
  if (!degrees.elements) {
    std::vector<cpp_int> y(K + 1);
    for (std::uint32_t n = 1; n <= K; ++n) y[n] = catalan(n - 1);
    return y;
  }
  std::vector<double> phi(static_cast<std::size_t>(degrees.max_degree()) + 1, 0.0);
  for (int m : *degrees.elements) phi[static_cast<std::size_t>(m)] = 1.0;
  return yn_exact_series(WeightSequence::custom(std::move(phi)), K);
}

namespace {

/// Evaluate the truncated series sum_k u_k x^k in double precision.
double eval_series(const std::vector<cpp_int>& u, double x) {
  double acc = 0.0, pw = 1.0;
  for (std::size_t k = 1; k < u.size(); ++k) {
    pw *= x;
    if (u[k] != 0) acc += static_cast<double>(u[k]) * pw;
    if (pw < 1e-280) break;  // higher terms cannot matter at |x| < 1
  }
  return acc;
}

struct RestrictedEquation {
  const std::vector<int>& M;
  const std::vector<cpp_int>& u;
  int max_m;

  /// h_0..h_max for scalar power sums p_1 = y, p_i = U(x^i).
  void h_values(double x, double y, std::vector<double>& h) const {
    std::vector<double> p(max_m + 1, 0.0);
    p[1] = y;
    for (int i = 2; i <= max_m; ++i) p[i] = eval_series(u, std::pow(x, i));
    h.assign(max_m + 1, 0.0);
    h[0] = 1.0;
    for (int m = 1; m <= max_m; ++m) {
      double acc = 0.0;
      for (int i = 1; i <= m; ++i) acc += p[i] * h[m - i];
      h[m] = acc / m;
    }
  }

  double F(double x, double y, std::vector<double>& h) const {
    h_values(x, y, h);
    double acc = 0.0;
    for (int m : M) acc += h[m];
    return x * acc;
  }

  // dF/dy uses d h_m / d p_1 = h_{m-1}.
  double Fy(double x, const std::vector<double>& h) const {
    double acc = 0.0;
    for (int m : M)
      if (m >= 1) acc += h[m - 1];
    return x * acc;
  }
};

}  // namespace

namespace {

double solve_radius(const DegreeSet& degrees, const std::vector<cpp_int>& u) {
  if (!degrees.elements) {
    // y = x exp(y + C(x)) with C(x) = sum_{i>=2} U(x^i)/i is tangent exactly
    // when y = 1, leaving the one-dimensional condition x e^{1 + C(x)} = 1.
    auto cond = [&](double x) {
      double C = 0.0;
      for (int i = 2;; ++i) {
        double xi = std::pow(x, i);
        double term = eval_series(u, xi) / i;
        C += term;
        if (term < 1e-19 || xi < 1e-18) break;
      }
      return x * std::exp(1.0 + C) - 1.0;
    };
    double lo = 0.05, hi = 0.95;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (cond(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  RestrictedEquation eq{*degrees.elements, u, degrees.max_degree()};
  // gap(x) = max_y (y - F(x,y)), attained where dF/dy = 1; positive below
  // the singularity, negative above it.
  std::vector<double> h;
  auto gap = [&](double x) {
    double ylo = 0.0, yhi = 1.0;
    eq.F(x, yhi, h);
    while (eq.Fy(x, h) < 1.0 && yhi < 1e6) {
      yhi *= 2.0;
      eq.F(x, yhi, h);
    }
    for (int it = 0; it < 200; ++it) {
      double ym = 0.5 * (ylo + yhi);
      eq.F(x, ym, h);
      (eq.Fy(x, h) < 1.0 ? ylo : yhi) = ym;
    }
    double y = 0.5 * (ylo + yhi);
    return y - eq.F(x, y, h);
  };
  double lo = 1e-3, hi = 0.95;
  if (gap(lo) <= 0.0 || gap(hi) >= 0.0)
    throw std::runtime_error("growth extraction failed to bracket the singularity");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (gap(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

GrowthEstimate unordered_growth(const DegreeSet& degrees, std::uint32_t K) {
  if (K < 50) throw std::invalid_argument("growth extraction needs K >= 50");
  const std::vector<cpp_int> u = unordered_count_series(degrees, K);

  GrowthEstimate g;
  g.radius = solve_radius(degrees, u);
  g.growth = 1.0 / g.radius;

  // Truncation sensitivity: redo with half the series; the difference is an
  // honest (if generous) proxy for the remaining truncation error.
  if (K >= 100) {
    std::vector<cpp_int> u2(u.begin(), u.begin() + K / 2 + 1);
    double half = 1.0 / solve_radius(degrees, u2);
    g.error_bound = std::max(4.0 * std::abs(g.growth - half), 4e-12 * g.growth);
  } else {
    g.error_bound = 1e-6 * g.growth;
  }
  return g;
}

double restricted_plane_growth(const DegreeSet& degrees) {
  if (!degrees.elements) {
    const WeightSequence w = WeightSequence::plane();
    return w.dPhi(solve_tau(w));
  }
  std::vector<double> phi(static_cast<std::size_t>(degrees.max_degree()) + 1, 0.0);
  for (int m : *degrees.elements) phi[static_cast<std::size_t>(m)] = 1.0;
  const WeightSequence w = WeightSequence::custom(std::move(phi));
  return w.dPhi(solve_tau(w));
}

}  // namespace fringe
