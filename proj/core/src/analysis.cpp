#include "clipflow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "clipflow/generators.hpp"
#include "clipflow/rng.hpp"

namespace clipflow {

namespace {

constexpr double kTheoremTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_lipschitz(const LeniaSystem& sys, const char* op) {
  if (!sys.growth.is_lipschitz()) {
    throw UnsupportedGrowthError(std::string(op) +
                                 ": requires a Lipschitz growth function (gol growth is not)");
  }
}

/// A pair (f, g) of in-bounds fields with sup_distance(f, g) <= max_dist.
std::pair<ScalarField, ScalarField> nearby_pair(GridShape shape, ClipBounds bounds,
                                                double max_dist, SplitMix64& rng) {
  ScalarField f = random_field(shape, bounds, rng.next_u64());
  ScalarField g = f;
  auto gv = g.values();
  for (double& v : gv) {
    v = std::min(std::max(v + rng.next_in(-max_dist, max_dist), bounds.lower), bounds.upper);
  }
  return {std::move(f), std::move(g)};
}

}  // namespace

std::string check_line(std::string_view name, bool pass, double max_violation, double constant) {
  std::ostringstream os;
  os.precision(9);
  os << "CHECK " << name << " " << (pass ? "pass" : "fail") << " max_violation=" << max_violation
     << " constant=" << constant;
  return os.str();
}

std::string check_line(std::string_view name, const ConditionReport& report) {
  return check_line(name, report.pass, report.max_violation, report.bound_constant);
}

void write_condition_csv(std::span<const ConditionReport> reports, const std::string& path) {
  static constexpr const char* kNames[] = {"e1", "e2", "speed", "tangency"};
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "condition,samples,bound_constant,max_violation,pass,c1,c2\n";
  out.precision(17);
  for (const auto& r : reports) {
    out << kNames[static_cast<int>(r.condition)] << "," << r.samples << "," << r.bound_constant
        << "," << r.max_violation << "," << (r.pass ? 1 : 0) << "," << r.speed_c1 << ","
        << r.speed_c2 << "\n";
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

ConditionReport verify_e1(const LeniaSystem& sys, GridShape shape, int sample_count,
                          std::uint64_t seed, std::span<const double> t_list) {
  require_lipschitz(sys, "verify_e1");
  const double lambda = sys.lipschitz_constant();
  SplitMix64 rng(seed);
  double worst = -kInf;
  long samples = 0;
  for (int i = 0; i < sample_count; ++i) {
    auto [f, g] = nearby_pair(shape, sys.bounds, 0.1, rng);
    const double before = sup_distance(f, g);
    for (double t : t_list) {
      const double after = sup_distance(lenia_step(f, sys, t), lenia_step(g, sys, t));
      worst = std::max(worst, after - (1.0 + t * lambda) * before);
      ++samples;
    }
  }
  ConditionReport r;
  r.condition = Condition::e1;
  r.samples = samples;
  r.bound_constant = lambda;
  r.max_violation = worst;
  r.tolerance = kTheoremTol;
  r.pass = worst <= kTheoremTol;
  r.speed_c2 = sys.speed_bound();
  return r;
}

std::vector<double> e2_level_maxima(const LeniaSystem& sys, const ScalarField& f0, int min_log2,
                                    int max_log2) {
  require_lipschitz(sys, "verify_e2");
  if (min_log2 < 1 || max_log2 < min_log2) {
    throw DomainError("verify_e2: need 1 <= min_log2 <= max_log2");
  }
  std::vector<double> level_max(static_cast<std::size_t>(max_log2 - min_log2 + 1), 0.0);
  // Cache X_s(f0) per s; reused across the t loop.
  std::vector<ScalarField> stepped;
  std::vector<double> step_sizes;
  for (int ks = min_log2; ks <= max_log2; ++ks) {
    const double s = std::ldexp(1.0, -ks);
    step_sizes.push_back(s);
    stepped.push_back(lenia_step(f0, sys, s));
  }
  for (std::size_t is = 0; is < step_sizes.size(); ++is) {
    for (std::size_t it = 0; it < step_sizes.size(); ++it) {
      const double s = step_sizes[is];
      const double t = step_sizes[it];
      if (s + t > 1.0) continue;
      const double defect = sup_distance(lenia_step(f0, sys, s + t), lenia_step(stepped[is], sys, t));
      const double r = defect / (s * t);
      const std::size_t level = std::min(is, it);  // level of max(s, t)
      level_max[level] = std::max(level_max[level], r);
    }
  }
  return level_max;
}

ConditionReport verify_e2(const LeniaSystem& sys, const ScalarField& f0, int min_log2,
                          int max_log2) {
  const auto levels = e2_level_maxima(sys, f0, min_log2, max_log2);
  double omega_hat = 0.0;
  for (double v : levels) omega_hat = std::max(omega_hat, v);
  const double bound = 4.0 * sys.lipschitz_constant() * sys.speed_bound();

  ConditionReport r;
  r.condition = Condition::e2;
  const long k = max_log2 - min_log2 + 1;
  r.samples = k * k;
  r.bound_constant = bound;
  r.max_violation = omega_hat - bound;
  r.tolerance = kTheoremTol;
  r.pass = r.max_violation <= kTheoremTol;
  r.speed_c2 = sys.speed_bound();
  return r;
}

ConditionReport verify_speed(const LeniaSystem& sys, GridShape shape, int sample_count,
                             std::uint64_t seed) {
  const double rho = sys.speed_bound();
  SplitMix64 rng(seed);
  double worst = -kInf;
  for (int i = 0; i < sample_count; ++i) {
    const ScalarField f = random_field(shape, sys.bounds, rng.next_u64());
    const double s = rng.next_unit();
    const double t = rng.next_unit();
    const double d = sup_distance(lenia_step(f, sys, s), lenia_step(f, sys, t));
    worst = std::max(worst, d - std::abs(s - t) * rho);
  }
  ConditionReport r;
  r.condition = Condition::speed;
  r.samples = sample_count;
  r.bound_constant = rho;
  r.max_violation = worst;
  r.tolerance = kTheoremTol;
  r.pass = worst <= kTheoremTol;
  r.speed_c2 = rho;
  return r;
}

bool ConvergenceReport::monotone_from(long from_n) const {
  for (std::size_t i = 0; i + 1 < refinements.size(); ++i) {
    if (refinements[i].n < from_n) continue;
    if (refinements[i + 1].distance > refinements[i].distance) return false;
  }
  return true;
}

ConvergenceReport convergence_study(const LeniaSystem& sys, const ScalarField& f0, double t,
                                    int n_max_log2) {
  if (!(t >= 0.0)) throw DomainError("convergence_study: t must be >= 0");
  // Smallest dyadic level whose step size t/2^k fits the arc field domain.
  int k0 = 1;
  while (t / std::ldexp(1.0, k0) > 1.0) ++k0;
  if (n_max_log2 < k0 + 1) {
    throw DomainError("convergence_study: need n_max_log2 >= " + std::to_string(k0 + 1) +
                      " for t = " + std::to_string(t) + " (at least two refinement levels)");
  }
  ConvergenceReport report;
  ScalarField prev = euler_flow(f0, sys, t, 1L << k0);
  for (int k = k0 + 1; k <= n_max_log2; ++k) {
    const long n = 1L << k;
    ScalarField next = euler_flow(f0, sys, t, n);
    report.refinements.push_back({n / 2, sup_distance(prev, next)});
    prev = std::move(next);
  }
  for (std::size_t i = 0; i + 1 < report.refinements.size(); ++i) {
    const double dn = report.refinements[i].distance;
    const double d2n = report.refinements[i + 1].distance;
    report.orders.push_back(dn > 0.0 && d2n > 0.0 ? std::log2(dn / d2n)
                                                  : std::numeric_limits<double>::quiet_NaN());
  }
  return report;
}

std::vector<std::pair<double, double>> tangency_residual(const LeniaSystem& sys,
                                                         const ScalarField& f0, double t,
                                                         std::span<const double> h_list,
                                                         long n_ref) {
  if (n_ref < 256) {
    throw DomainError("tangency_residual: reference flow needs n_ref >= 256 compositions");
  }
  const ScalarField flow_t = euler_flow(f0, sys, t, n_ref);
  std::vector<std::pair<double, double>> out;
  out.reserve(h_list.size());
  for (double h : h_list) {
    if (!(h > 0.0)) throw DomainError("tangency_residual: h must be positive");
    const ScalarField flow_th = euler_flow(f0, sys, t + h, n_ref);
    const ScalarField arc = lenia_step(flow_t, sys, h);
    out.emplace_back(h, sup_distance(flow_th, arc) / h);
  }
  return out;
}

void write_convergence_csv(const ConvergenceReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "n,distance,order_estimate\n";
  out.precision(17);
  for (std::size_t i = 0; i < report.refinements.size(); ++i) {
    out << report.refinements[i].n << "," << report.refinements[i].distance << ",";
    if (i < report.orders.size() && std::isfinite(report.orders[i])) {
      out << report.orders[i];
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

void write_tangency_csv(const std::vector<std::pair<double, double>>& residuals,
                        const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "h,residual\n";
  out.precision(17);
  for (const auto& [h, r] : residuals) out << h << "," << r << "\n";
  if (!out) throw IoError("write failed for '" + path + "'");
}

SupportBoundReport support_bound_check(const LeniaSystem& sys, const ScalarField& f0,
                                       double t_total, long n) {
  const double a = sys.growth.nonpositivity_radius();
  if (!(a > 0.0)) {
    throw HypothesisError(
        "support_bound_check: growth has no radius a > 0 with G <= 0 on [-a, a]");
  }
  if (n < 1) throw DomainError("support_bound_check: need n >= 1 steps");

  const double sup_state = std::max(std::abs(sys.bounds.lower), std::abs(sys.bounds.upper));
  const double g_plus = sys.growth.positive_max(sys.kernel.l1_norm() * sup_state);
  if (!(g_plus > 0.0)) {
    throw HypothesisError("support_bound_check: G has no positive part; the bound is vacuous");
  }
  const double rate = g_plus * sys.kernel.l1_norm();
  const double R = sys.kernel.support_radius();

  if (is_identically_zero(f0)) {
    throw HypothesisError("support_bound_check: f0 has empty support");
  }

  // The proposition is a plane statement; require the support plus the
  // largest ring the bound lets grow by t_total to fit inside a half torus.
  int y_min = f0.height(), y_max = -1, x_min = f0.width(), x_max = -1;
  for (int y = 0; y < f0.height(); ++y) {
    for (int x = 0; x < f0.width(); ++x) {
      if (f0.at(y, x) > 0.0) {
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
      }
    }
  }
  if (y_min == 0 || x_min == 0 || y_max == f0.height() - 1 || x_max == f0.width() - 1) {
    throw HypothesisError("support_bound_check: support touches the grid border");
  }
  const double reach = R * (std::floor(t_total * rate / a) + 1.0);
  const double half_span =
      0.5 * f0.dx() * static_cast<double>(std::max(y_max - y_min + 1, x_max - x_min + 1));
  if (half_span + reach > 0.5 * std::min(f0.width(), f0.height()) * f0.dx()) {
    throw HypothesisError("support_bound_check: the g*t growth region would wrap the torus");
  }

  const ScalarField dist = support_distance_map(f0);

  SupportBoundReport report;
  report.hypothesis_a = a;
  report.rate_denominator = rate;
  report.tightest_margin = kInf;

  const double dt = t_total / static_cast<double>(n);
  std::vector<double> first_positive(f0.cell_count(), kInf);
  const auto dv = dist.values();

  ScalarField state = f0;
  for (long k = 1; k <= n; ++k) {
    state = lenia_step(state, sys, dt);
    const double tau = dt * static_cast<double>(k);
    const auto sv = state.values();
    for (std::size_t i = 0; i < sv.size(); ++i) {
      if (sv[i] != 0.0 && first_positive[i] == kInf) first_positive[i] = tau;
      const double bound_time = a * std::floor(dv[i] / R) / rate;
      if (tau <= bound_time) {
        ++report.cells_checked;
        if (sv[i] != 0.0) ++report.violations;
      }
    }
  }
  for (std::size_t i = 0; i < first_positive.size(); ++i) {
    if (first_positive[i] == kInf || dv[i] == 0.0) continue;
    const double bound_time = a * std::floor(dv[i] / R) / rate;
    report.tightest_margin = std::min(report.tightest_margin, first_positive[i] - bound_time);
  }
  return report;
}

MonotoneReport monotone_growth_check(const LeniaSystem& sys, const ScalarField& f0, long steps,
                                     double t_step) {
  for (double w : sys.kernel.weights()) {
    if (w < 0.0) throw HypothesisError("monotone_growth_check: kernel must be nonnegative");
  }
  if (!(sys.kernel.weight_at(0, 0) > 0.0)) {
    throw HypothesisError("monotone_growth_check: kernel center weight must be positive");
  }
  // Growth must satisfy G(u) >= 0 for u >= 0 and G(0) = 0.
  if (sys.growth(0.0) != 0.0) {
    throw HypothesisError("monotone_growth_check: growth must vanish at 0");
  }
  for (int i = 0; i <= 1024; ++i) {
    const double u = sys.kernel.l1_norm() * static_cast<double>(i) / 1024.0;
    if (sys.growth(u) < 0.0) {
      throw HypothesisError("monotone_growth_check: growth must be nonnegative on [0, |K|_1]");
    }
  }

  MonotoneReport report;
  report.steps = steps;
  auto count_support = [](const ScalarField& f) {
    long c = 0;
    for (double v : f.values()) c += v > 0.0 ? 1 : 0;
    return c;
  };

  ScalarField state = f0;
  report.support_cells.push_back(count_support(state));
  for (long k = 0; k < steps; ++k) {
    ScalarField next = lenia_step(state, sys, t_step);
    const auto pv = state.values();
    const auto nv = next.values();
    for (std::size_t i = 0; i < pv.size(); ++i) {
      if (nv[i] < pv[i]) ++report.pointwise_violations;
      if (pv[i] > 0.0 && nv[i] <= 0.0) ++report.support_violations;
    }
    report.support_cells.push_back(count_support(next));
    state = std::move(next);
  }
  return report;
}

std::optional<long> extinction_time(const LeniaSystem& sys, const ScalarField& f0, double t_step,
                                    long max_steps, DynamicsKind kind) {
  ScalarField state = f0;
  for (long k = 0; k <= max_steps; ++k) {
    if (is_identically_zero(state)) return k;
    if (k == max_steps) break;
    state = kind == DynamicsKind::clipped ? lenia_step(state, sys, t_step)
                                          : asymptotic_step(state, sys, t_step);
  }
  return std::nullopt;
}

IrreversibilityWitness irreversibility_demo(const LeniaSystem& sys) {
  // The construction needs G == 1 so that both constants saturate the upper
  // clip; the kernel comes from the caller's system.
  const int side = std::max(16, sys.kernel.diameter());
  IrreversibilityWitness w{
      LeniaSystem{sys.kernel, GrowthSpec{ConstantGrowth{1.0}}, ClipBounds::unit()},
      ScalarField(side, side, sys.kernel.dx(), ClipBounds::unit(), 0.95),
      ScalarField(side, side, sys.kernel.dx(), ClipBounds::unit(), 0.9),
      0.1,
      0.0,
      0.0};
  w.input_distance = sup_distance(w.f, w.g);
  w.image_distance = sup_distance(lenia_step(w.f, w.system, w.t), lenia_step(w.g, w.system, w.t));
  return w;
}

}  // namespace clipflow
