#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clipflow/dynamics.hpp"
#include "clipflow/field.hpp"

namespace clipflow {

enum class Condition { e1, e2, speed, tangency };

/// One verifier outcome: the constant the theorem supplies, the worst
/// violation observed, and the linear-speed-growth pair (c1, c2) = (0, max|G|)
/// every report carries.
struct ConditionReport {
  Condition condition = Condition::e1;
  long samples = 0;
  double bound_constant = 0.0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double speed_c1 = 0.0;
  double speed_c2 = 0.0;
};

/// `CHECK <name> <pass|fail> max_violation=<v> constant=<c>`
std::string check_line(std::string_view name, bool pass, double max_violation, double constant);
std::string check_line(std::string_view name, const ConditionReport& report);

/// CSV rows: condition,samples,bound_constant,max_violation,pass,c1,c2.
void write_condition_csv(std::span<const ConditionReport> reports, const std::string& path);

/// E1: d(X_t f, X_t g) <= (1 + t*Lambda) d(f, g) + 1e-12 with
/// Lambda = C_G |K|_1, over random in-bounds pairs with d(f, g) <= 0.1 and
/// every t in t_list. Requires Lipschitz growth.
ConditionReport verify_e1(const LeniaSystem& sys, GridShape shape, int sample_count,
                          std::uint64_t seed, std::span<const double> t_list);

/// E2: r(s, t) = d(X_{s+t} f0, X_t X_s f0) / (s t) over the dyadic grid
/// s, t in {2^-min_log2 .. 2^-max_log2}; reports Omega-hat = max r and checks
/// it against 4 C_V max|G| (factor-4 slack over the proof's O(st) constant).
ConditionReport verify_e2(const LeniaSystem& sys, const ScalarField& f0, int min_log2 = 3,
                          int max_log2 = 10);

/// Per-dyadic-level maxima of r(s, t): level k holds the max over pairs with
/// max(s, t) = 2^-k. Used for the no-divergence trend check.
std::vector<double> e2_level_maxima(const LeniaSystem& sys, const ScalarField& f0,
                                    int min_log2 = 3, int max_log2 = 10);

/// Speed: d(X_s f, X_t f) <= |s - t| max|G| + 1e-12 over random (f, s, t).
ConditionReport verify_speed(const LeniaSystem& sys, GridShape shape, int sample_count,
                             std::uint64_t seed);

/// Euler-curve refinement evidence: d_n = d(flow with n steps, flow with 2n
/// steps) for n = 2, 4, ..., 2^(n_max_log2 - 1), plus order estimates
/// log2(d_n / d_2n) and optional tangency residuals.
struct ConvergenceReport {
  struct Refinement {
    long n = 0;
    double distance = 0.0;
  };
  std::vector<Refinement> refinements;
  std::vector<double> orders;  // orders[i] = log2(d_i / d_{i+1}); NaN when degenerate
  std::vector<std::pair<double, double>> tangency_residuals;  // (h, residual)

  /// d_n non-increasing for all rows with n >= from_n.
  bool monotone_from(long from_n) const;
};

ConvergenceReport convergence_study(const LeniaSystem& sys, const ScalarField& f0, double t,
                                    int n_max_log2);

/// residual(h) = d(F_{t+h} f0, X_h(F_t f0)) / h with F approximated by
/// n_ref-fold Euler curves. Requires n_ref >= 256.
std::vector<std::pair<double, double>> tangency_residual(const LeniaSystem& sys,
                                                         const ScalarField& f0, double t,
                                                         std::span<const double> h_list,
                                                         long n_ref);

void write_convergence_csv(const ConvergenceReport& report, const std::string& path);
void write_tangency_csv(const std::vector<std::pair<double, double>>& residuals,
                        const std::string& path);

/// Support-growth bound: f_tau(x) must vanish for every
/// tau <= a*floor(d(x)/R) / (g |K|_1), with a the growth's nonpositivity
/// radius, g = max G^+ and R the kernel support radius. Checks every Euler
/// snapshot of the run against the distance map of f0.
struct SupportBoundReport {
  double hypothesis_a = 0.0;
  double rate_denominator = 0.0;  // g |K|_1
  long cells_checked = 0;
  long violations = 0;
  /// min over cells that ever became positive of (first positive time -
  /// bound time); +inf when nothing grew.
  double tightest_margin = 0.0;

  bool pass() const { return violations == 0; }
};

SupportBoundReport support_bound_check(const LeniaSystem& sys, const ScalarField& f0,
                                       double t_total, long n);

/// Monotone-growth audit for nonnegative kernels with nonnegative growth
/// (G(u) >= 0, G(0) = 0): pointwise non-decrease and non-shrinking support,
/// step over step.
struct MonotoneReport {
  long steps = 0;
  long pointwise_violations = 0;
  long support_violations = 0;
  std::vector<long> support_cells;  // per snapshot, including step 0

  bool pass() const { return pointwise_violations == 0 && support_violations == 0; }
};

MonotoneReport monotone_growth_check(const LeniaSystem& sys, const ScalarField& f0, long steps,
                                     double t_step);

enum class DynamicsKind { clipped, asymptotic };

/// First step index at which the state is identically zero, or nullopt.
std::optional<long> extinction_time(const LeniaSystem& sys, const ScalarField& f0, double t_step,
                                    long max_steps, DynamicsKind kind = DynamicsKind::clipped);

/// Two distinct constant fields whose clipped images coincide bit for bit
/// (Constant{1} growth, f = 0.95, g = 0.9, t = 0.1; both saturate at 1).
struct IrreversibilityWitness {
  LeniaSystem system;
  ScalarField f;
  ScalarField g;
  double t = 0.0;
  double input_distance = 0.0;
  double image_distance = 0.0;
};

IrreversibilityWitness irreversibility_demo(const LeniaSystem& sys);

}  // namespace clipflow
