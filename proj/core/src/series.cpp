#include "fringe/series.hpp"

#include <cmath>
#include <stdexcept>

namespace fringe {

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b,
               double fb, double fm, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = std::max(std::abs(whole), 1e-300) * rel_tol;
  return simpson(f, a, fa, b, fb, fm, whole, tol, 48);
}

SeriesResult sum_to_infinity(const std::function<double(double)>& f, std::int64_t k0,
                             std::int64_t cutoff) {
  if (cutoff < k0 + 8) throw std::invalid_argument("series cutoff too small");

  KahanSum head;
  double abs_sum = 0.0;
  for (std::int64_t k = k0; k <= cutoff; ++k) {
    double term = f(static_cast<double>(k));
    head.add(term);
    abs_sum += std::abs(term);
  }

  // Tail via Euler-Maclaurin at a = cutoff + 1:
  //   sum_{k>=a} f(k) = int_a^inf f + f(a)/2 - f'(a)/12 + f'''(a)/720 - ...
  // The integral goes through x = a e^s, turning polynomial-log decay into a
  // smooth exponentially damped integrand.
  const double a = static_cast<double>(cutoff + 1);
  const double quad_rel = 1e-13;
  const double integral =
      integrate([&](double s) { return f(a * std::exp(s)) * a * std::exp(s); }, 0.0, 60.0,
                quad_rel);

  const double h = std::max(1.0, 1e-3 * a);
  const double f_a = f(a);
  const double fp = (f(a + h) - f(a - h)) / (2.0 * h);
  const double fppp =
      (-f(a - 2.0 * h) + 2.0 * f(a - h) - 2.0 * f(a + h) + f(a + 2.0 * h)) / (2.0 * h * h * h);

  SeriesResult r;
  r.value = head.value() + integral + 0.5 * f_a - fp / 12.0 + fppp / 720.0;
  // Remainder after the B4 term is ~ (2 zeta(4)/(2pi)^4) int |f''''|, which
  // for monotone decay is of the order of |f'''(a)| again; a 10x margin on
  // that plus quadrature and rounding keeps the bound conservative.
  r.error_bound = 10.0 * std::abs(fppp) + std::abs(integral) * quad_rel * 4.0 +
                  abs_sum * 4e-16 + std::abs(r.value) * 1e-15;
  return r;
}

}  // namespace fringe
