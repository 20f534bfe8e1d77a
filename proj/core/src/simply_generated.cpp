#include "fringe/simply_generated.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace fringe {

using boost::multiprecision::cpp_int;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTruncation = 1e-18;

double binomial_coefficient(int d, std::uint32_t k) {
  if (k > static_cast<std::uint32_t>(d)) return 0.0;
  double r = 1.0;
  for (std::uint32_t i = 0; i < k; ++i) r = r * static_cast<double>(d - i) / (i + 1);
  return std::round(r);
}

}  // namespace

WeightSequence WeightSequence::plane() {
  WeightSequence w;
  w.family_ = Family::Plane;
  w.descriptor_ = "plane";
  return w;
}

WeightSequence WeightSequence::dary(int d) {
  if (d < 2) throw std::invalid_argument("dary requires d >= 2");
  WeightSequence w;
  w.family_ = Family::Dary;
  w.arity_ = d;
  w.descriptor_ = "dary:" + std::to_string(d);
  return w;
}

WeightSequence WeightSequence::motzkin() {
  WeightSequence w;
  w.family_ = Family::Motzkin;
  w.descriptor_ = "motzkin";
  return w;
}

WeightSequence WeightSequence::labelled() {
  WeightSequence w;
  w.family_ = Family::Labelled;
  w.descriptor_ = "labelled";
  return w;
}

WeightSequence WeightSequence::custom(std::vector<double> phi) {
  while (!phi.empty() && phi.back() == 0.0) phi.pop_back();
  if (phi.empty() || phi[0] <= 0.0)
    throw std::invalid_argument("custom weights need phi_0 > 0");
  bool has_branching = false;
  for (std::size_t k = 2; k < phi.size(); ++k) has_branching |= phi[k] > 0.0;
  if (!has_branching)
    throw std::invalid_argument("custom weights need some phi_k > 0 with k >= 2");
  WeightSequence w;
  w.family_ = Family::Custom;
  std::ostringstream os;
  os << "custom:";
  for (std::size_t k = 0; k < phi.size(); ++k) {
    if (k) os << ',';
    os << phi[k];
  }
  w.descriptor_ = os.str();
  w.phi_ = std::move(phi);
  return w;
}

WeightSequence WeightSequence::from_descriptor(const std::string& descriptor) {
  if (descriptor == "plane") return plane();
  if (descriptor == "motzkin") return motzkin();
  if (descriptor == "labelled") return labelled();
  if (descriptor.rfind("dary:", 0) == 0) return dary(std::stoi(descriptor.substr(5)));
  if (descriptor.rfind("custom:", 0) == 0) {
    std::vector<double> phi;
    std::stringstream ss(descriptor.substr(7));
    std::string item;
    while (std::getline(ss, item, ',')) phi.push_back(std::stod(item));
    return custom(std::move(phi));
  }
  throw std::invalid_argument("unknown family descriptor: " + descriptor);
}

double WeightSequence::phi(std::uint32_t k) const {
  switch (family_) {
    case Family::Plane: return 1.0;
    case Family::Dary: return binomial_coefficient(arity_, k);
    case Family::Motzkin: return k <= 2 ? 1.0 : 0.0;
    case Family::Labelled: return 1.0 / std::tgamma(static_cast<double>(k) + 1.0);
    case Family::Custom: return k < phi_.size() ? phi_[k] : 0.0;
  }
  return 0.0;
}

double WeightSequence::Phi(double x) const {
  switch (family_) {
    case Family::Plane: return 1.0 / (1.0 - x);
    case Family::Dary: return std::pow(1.0 + x, arity_);
    case Family::Motzkin: return 1.0 + x + x * x;
    case Family::Labelled: return std::exp(x);
    case Family::Custom: {
      double r = 0.0;
      for (std::size_t k = phi_.size(); k-- > 0;) r = r * x + phi_[k];
      return r;
    }
  }
  return 0.0;
}

double WeightSequence::dPhi(double x) const {
  switch (family_) {
    case Family::Plane: return 1.0 / ((1.0 - x) * (1.0 - x));
    case Family::Dary: return arity_ * std::pow(1.0 + x, arity_ - 1);
    case Family::Motzkin: return 1.0 + 2.0 * x;
    case Family::Labelled: return std::exp(x);
    case Family::Custom: {
      double r = 0.0;
      for (std::size_t k = phi_.size(); k-- > 1;) r = r * x + phi_[k] * static_cast<double>(k);
      return r;
    }
  }
  return 0.0;
}

double WeightSequence::d2Phi(double x) const {
  switch (family_) {
    case Family::Plane: {
      double u = 1.0 - x;
      return 2.0 / (u * u * u);
    }
    case Family::Dary:
      return static_cast<double>(arity_) * (arity_ - 1) * std::pow(1.0 + x, arity_ - 2);
    case Family::Motzkin: return 2.0;
    case Family::Labelled: return std::exp(x);
    case Family::Custom: {
      double r = 0.0;
      for (std::size_t k = phi_.size(); k-- > 2;)
        r = r * x + phi_[k] * static_cast<double>(k) * static_cast<double>(k - 1);
      return r;
    }
  }
  return 0.0;
}

double WeightSequence::radius() const {
  return family_ == Family::Plane ? 1.0 : kInf;
}

int WeightSequence::max_degree() const {
  switch (family_) {
    case Family::Plane:
    case Family::Labelled: return -1;
    case Family::Dary: return arity_;
    case Family::Motzkin: return 2;
    case Family::Custom: return static_cast<int>(phi_.size()) - 1;
  }
  return -1;
}

int WeightSequence::support_gcd() const {
  if (max_degree() < 0) return 1;  // degree 1 has positive weight
  int g = 0;
  for (int m = 1; m <= max_degree(); ++m)
    if (phi(static_cast<std::uint32_t>(m)) > 0.0) g = std::gcd(g, m);
  return g == 0 ? 1 : g;
}

double solve_tau(const WeightSequence& w) {
  const auto g = [&](double t) { return t * w.dPhi(t) - w.Phi(t); };
  const double R = w.radius();

  double lo = 0.0, hi;
  if (std::isfinite(R)) {
    hi = R;
    double probe = R;
    bool found = false;
    for (int j = 1; j <= 60; ++j) {
      probe = R * (1.0 - std::ldexp(1.0, -j));
      if (g(probe) > 0.0) {
        hi = probe;
        found = true;
        break;
      }
      lo = probe;
    }
    if (!found) {
      std::ostringstream os;
      os << "no critical point for " << w.descriptor() << ": g(" << probe
         << ") = " << g(probe) << " <= 0 on (0," << R << ")";
      throw NoCriticalPoint(os.str());
    }
  } else {
    hi = 1.0;
    while (g(hi) <= 0.0) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e150) {
        std::ostringstream os;
        os << "no critical point for " << w.descriptor() << ": g stays negative up to " << hi;
        throw NoCriticalPoint(os.str());
      }
    }
  }

  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? hi : lo) = mid;
  }
  double tau = 0.5 * (lo + hi);
  // Newton polish; g'(t) = t Phi''(t).
  for (int it = 0; it < 4; ++it) {
    double deriv = tau * w.d2Phi(tau);
    if (deriv <= 0.0) break;
    double step = g(tau) / deriv;
    double next = tau - step;
    if (next <= 0.0 || (std::isfinite(R) && next >= R)) break;
    tau = next;
  }
  if (std::abs(g(tau)) > 1e-12 * w.Phi(tau))
    throw NoCriticalPoint("critical point residual too large for " + w.descriptor());
  return tau;
}

double OffspringDistribution::log_prob(std::uint32_t m) const {
  return m < log_p.size() ? log_p[m] : -kInf;
}

OffspringDistribution offspring_distribution(const WeightSequence& w) {
  OffspringDistribution o;
  o.tau = solve_tau(w);
  const double Phi_tau = w.Phi(o.tau);
  o.sigma2 = o.tau * o.tau * w.d2Phi(o.tau) / Phi_tau;

  const int max_deg = w.max_degree();
  double tau_pow = 1.0;
  for (std::uint32_t m = 0;; ++m) {
    double pm = w.phi(m) * tau_pow / Phi_tau;
    if (max_deg >= 0) {
      o.p.push_back(pm);
      if (m == static_cast<std::uint32_t>(max_deg)) break;
    } else {
      if (m > 2 && pm < kTruncation) break;
      o.p.push_back(pm);
    }
    tau_pow *= o.tau;
  }
  double total = std::accumulate(o.p.begin(), o.p.end(), 0.0);
  for (double& pm : o.p) pm /= total;
  o.log_p.reserve(o.p.size());
  for (double pm : o.p) o.log_p.push_back(pm > 0.0 ? std::log(pm) : -kInf);

  int g = 0;
  for (std::size_t m = 1; m < o.p.size(); ++m)
    if (o.p[m] > 0.0) g = std::gcd(g, static_cast<int>(m));
  o.support_gcd = g == 0 ? 1 : g;
  return o;
}

double offspring_variance(const OffspringDistribution& o) { return o.sigma2; }

Tree degrees_to_tree(std::span<const std::uint32_t> degrees) {
  const std::size_t n = degrees.size();
  if (n == 0) throw std::invalid_argument("empty degree sequence");
  std::uint64_t total = std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
  if (total != n - 1) throw std::invalid_argument("degrees must sum to n-1");

  // Cycle lemma: rotate to start right after the first minimum of the
  // Lukasiewicz prefix sums.
  std::int64_t prefix = 0, best = 0;
  std::size_t cut = 0;  // number of leading elements moved to the back
  for (std::size_t i = 0; i < n; ++i) {
    prefix += static_cast<std::int64_t>(degrees[i]) - 1;
    if (prefix < best) {
      best = prefix;
      cut = i + 1;
    }
  }
  std::vector<std::uint32_t> rotated(n);
  for (std::size_t i = 0; i < n; ++i) rotated[i] = degrees[(cut + i) % n];
  return Tree::from_preorder_degrees(rotated);
}

GwSampler::GwSampler(const WeightSequence& w) : w_(w), off_(offspring_distribution(w)) {
  const std::size_t K = off_.p.size();
  if (K <= 8) {
    cumulative_.resize(K);
    double acc = 0.0;
    for (std::size_t m = 0; m < K; ++m) {
      acc += off_.p[m];
      cumulative_[m] = acc;
    }
    cumulative_.back() = 1.0;
  } else {
    // Walker alias table.
    alias_prob_.assign(K, 0.0);
    alias_other_.assign(K, 0);
    std::vector<double> scaled(K);
    for (std::size_t m = 0; m < K; ++m) scaled[m] = off_.p[m] * static_cast<double>(K);
    std::vector<std::uint32_t> small, large;
    for (std::size_t m = 0; m < K; ++m)
      (scaled[m] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(m));
    while (!small.empty() && !large.empty()) {
      std::uint32_t s = small.back(), l = large.back();
      small.pop_back();
      alias_prob_[s] = scaled[s];
      alias_other_[s] = l;
      scaled[l] -= 1.0 - scaled[s];
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    for (std::uint32_t m : large) alias_prob_[m] = 1.0;
    for (std::uint32_t m : small) alias_prob_[m] = 1.0;
  }
}

std::uint32_t GwSampler::draw_degree(SplitRng& rng) const {
  if (!cumulative_.empty()) {
    double u = rng.next_double();
    std::uint32_t m = 0;
    while (u >= cumulative_[m]) ++m;
    return m;
  }
  const auto K = static_cast<std::uint64_t>(alias_prob_.size());
  auto i = static_cast<std::uint32_t>(rng.next_below(K));
  return rng.next_double() < alias_prob_[i] ? i : alias_other_[i];
}

Tree GwSampler::sample(std::size_t n, SplitRng& rng) const {
  if (n == 0) throw ImpossibleSize("tree size must be positive");
  if ((n - 1) % static_cast<std::size_t>(off_.support_gcd) != 0)
    throw ImpossibleSize("size " + std::to_string(n) + " is impossible for " + w_.descriptor() +
                         " (period " + std::to_string(off_.support_gcd) + ")");

  const auto target = static_cast<std::uint64_t>(n - 1);
  std::vector<std::uint32_t> degrees(n);
  for (;;) {
    std::uint64_t sum = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t d = draw_degree(rng);
      sum += d;
      if (sum > target) {  // degrees are nonnegative, no way back down
        ok = false;
        break;
      }
      degrees[i] = d;
    }
    if (!ok || sum != target) continue;
    break;
  }

  Tree t = degrees_to_tree(degrees);
  if (!w_.slotted()) return t;

  // Uniform random slot subset per vertex: sequential sampling yields the
  // subset in increasing order, matching the child order; slots are recorded
  // keyed by child vertex.
  const int d = w_.arity();
  const std::size_t m = t.size();
  std::vector<std::uint32_t> preorder_degrees(m);
  std::vector<std::uint32_t> slots(m > 1 ? m - 1 : 0);
  for (VertexId v = 0; v < m; ++v) {
    auto kids = t.children(v);
    preorder_degrees[v] = static_cast<std::uint32_t>(kids.size());
    std::uint32_t need = preorder_degrees[v];
    for (int s = 0; s < d && need > 0; ++s) {
      auto remaining = static_cast<std::uint64_t>(d - s);
      if (rng.next_below(remaining) < need) {
        slots[kids[kids.size() - need] - 1] = static_cast<std::uint32_t>(s);
        --need;
      }
    }
  }
  return Tree::from_preorder_degrees(preorder_degrees, slots, d);
}

Tree sample_gw_tree(std::size_t n, const WeightSequence& w, SplitRng& rng) {
  return GwSampler(w).sample(n, rng);
}

namespace {

template <typename Emit>
void enumerate_degree_sequences(std::size_t n, int max_degree, const WeightSequence& w,
                                std::vector<std::uint32_t>& degrees, std::size_t pos,
                                std::size_t open, Emit&& emit) {
  if (pos == n) {
    if (open == 0) emit(degrees);
    return;
  }
  // `open` unfilled child slots remain, this vertex fills one of them.
  const std::size_t rest = n - pos - 1;  // vertices still to place after this one
  const std::size_t min_open = rest == 0 ? 0 : 1;
  for (std::uint32_t m = 0;; ++m) {
    if (max_degree >= 0 && m > static_cast<std::uint32_t>(max_degree)) break;
    std::size_t new_open = open - 1 + m;
    if (new_open > rest) break;  // each later vertex consumes exactly one slot
    if (new_open < min_open || w.phi(m) <= 0.0) continue;
    degrees[pos] = m;
    enumerate_degree_sequences(n, max_degree, w, degrees, pos + 1, new_open, emit);
  }
}

}  // namespace

std::vector<std::pair<Tree, double>> enumerate_family(std::size_t n, const WeightSequence& w,
                                                      std::size_t bound) {
  if (n == 0 || n > bound)
    throw std::invalid_argument("enumerate_family: size out of bounds");
  std::vector<std::pair<Tree, double>> out;
  std::vector<std::uint32_t> degrees(n);
  enumerate_degree_sequences(n, w.max_degree(), w, degrees, 0, 1,
                             [&](const std::vector<std::uint32_t>& seq) {
                               double weight = 1.0;
                               for (std::uint32_t m : seq) weight *= w.phi(m);
                               out.emplace_back(Tree::from_preorder_degrees(seq), weight);
                             });
  return out;
}

namespace {

/// Assign every vertex one of the sorted degree-sized slot subsets; slot
/// lists are recorded keyed by child vertex.
void expand_slots(const Tree& plane, int d, VertexId vertex,
                  std::vector<std::uint32_t>& slots, std::vector<Tree>& out,
                  const std::vector<std::uint32_t>& degrees) {
  if (vertex == plane.size()) {
    out.push_back(Tree::from_preorder_degrees(degrees, slots, d));
    return;
  }
  auto kids = plane.children(vertex);
  const auto m = static_cast<std::uint32_t>(kids.size());
  if (m == 0) {
    expand_slots(plane, d, vertex + 1, slots, out, degrees);
    return;
  }
  auto rec = [&](auto&& self, std::uint32_t idx, std::uint32_t from) -> void {
    if (idx == m) {
      expand_slots(plane, d, vertex + 1, slots, out, degrees);
      return;
    }
    for (std::uint32_t s = from; s + (m - idx) <= static_cast<std::uint32_t>(d); ++s) {
      slots[kids[idx] - 1] = s;
      self(self, idx + 1, s + 1);
    }
  };
  rec(rec, 0, 0);
}

}  // namespace

std::vector<Tree> enumerate_family_slotted(std::size_t n, int d, std::size_t bound) {
  if (n == 0 || n > bound)
    throw std::invalid_argument("enumerate_family_slotted: size out of bounds");
  const WeightSequence w = WeightSequence::dary(d);
  std::vector<Tree> out;
  std::vector<std::uint32_t> degrees(n);
  enumerate_degree_sequences(n, d, w, degrees, 0, 1,
                             [&](const std::vector<std::uint32_t>& seq) {
                               Tree plane = Tree::from_preorder_degrees(seq);
                               std::vector<std::uint32_t> slots(n > 1 ? n - 1 : 0);
                               expand_slots(plane, d, 0, slots, out, seq);
                             });
  return out;
}

double yn_asymptotic_log(std::size_t n, const WeightSequence& w) {
  const int d = w.support_gcd();
  if (n == 0 || (n - 1) % static_cast<std::size_t>(d) != 0) return -kInf;
  const double tau = solve_tau(w);
  const double nd = static_cast<double>(n);
  return std::log(static_cast<double>(d)) +
         0.5 * (std::log(w.Phi(tau)) - std::log(2.0 * M_PI * w.d2Phi(tau))) +
         nd * std::log(w.dPhi(tau)) - 1.5 * std::log(nd);
}

double yn_asymptotic(std::size_t n, const WeightSequence& w) {
  return std::exp(yn_asymptotic_log(n, w));
}

cpp_int catalan(std::uint32_t k) {
  // C_k = binom(2k, k) / (k+1), built incrementally: C_0 = 1,
  // C_{j} = C_{j-1} * 2(2j-1)/(j+1).
  cpp_int c = 1;
  for (std::uint32_t j = 1; j <= k; ++j) {
    c *= 2 * (2 * j - 1);
    c /= j + 1;
  }
  return c;
}

std::vector<cpp_int> yn_exact_series(const WeightSequence& w, std::uint32_t N) {
  std::vector<cpp_int> y(N + 1);
  if (w.family() == WeightSequence::Family::Plane) {
    for (std::uint32_t n = 1; n <= N; ++n) y[n] = catalan(n - 1);
    return y;
  }
  const int max_deg = w.max_degree();
  if (max_deg < 0)
    throw std::invalid_argument("exact series needs bounded degrees or the plane family");
  std::vector<cpp_int> phi(max_deg + 1);
  for (int m = 0; m <= max_deg; ++m) {
    double pm = w.phi(static_cast<std::uint32_t>(m));
    if (pm != std::floor(pm) || pm < 0)
      throw std::invalid_argument("exact series needs nonnegative integer weights");
    phi[m] = static_cast<std::uint64_t>(pm);
  }

  // P[m][k] = [x^k] Y(x)^m, filled column by column; the degree-(k) column
  // only needs y_1..y_k, which are known before y_{k+1} is produced.
  std::vector<std::vector<cpp_int>> P(max_deg + 1, std::vector<cpp_int>(N));
  for (std::uint32_t n = 1; n <= N; ++n) {
    const std::uint32_t k = n - 1;
    P[0][k] = (k == 0) ? 1 : 0;
    for (int m = 1; m <= max_deg; ++m) {
      cpp_int acc = 0;
      for (std::uint32_t j = 1; j <= k; ++j)
        if (y[j] != 0 && P[m - 1][k - j] != 0) acc += y[j] * P[m - 1][k - j];
      P[m][k] = std::move(acc);
    }
    cpp_int yn = 0;
    for (int m = 0; m <= max_deg; ++m)
      if (phi[m] != 0) yn += phi[m] * P[m][k];
    y[n] = std::move(yn);
  }
  return y;
}

}  // namespace fringe
