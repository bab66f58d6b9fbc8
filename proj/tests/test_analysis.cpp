#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "clipflow/analysis.hpp"
#include "clipflow/generators.hpp"
#include "clipflow/identities.hpp"

using namespace clipflow;

namespace {

LeniaSystem standard_system(double dx = 0.0625) {
  return LeniaSystem{discretize_kernel({ExpBumpKernel{1.0}, true}, dx),
                     GrowthSpec{GaussianBumpGrowth{0.15, 0.015}}, ClipBounds::unit()};
}

LeniaSystem constant_system(double value, double dx = 1.0) {
  return LeniaSystem{discretize_kernel({GolKernel{}, false}, dx), GrowthSpec{ConstantGrowth{value}},
                     ClipBounds::unit()};
}

ScalarField quantized_blob(GridShape shape, double cx, double cy, double radius, double peak) {
  ScalarField f = blob_field(shape, ClipBounds::unit(), cx, cy, radius, peak);
  for (double& v : f.values()) v = std::round(v * 1048576.0) / 1048576.0;
  return f;
}

}  // namespace

TEST_CASE("verify_e1: theorem bound holds and constant growth never expands") {
  const LeniaSystem sys = standard_system();
  const double t_list[] = {1e-3, 1e-2, 1e-1};
  const ConditionReport r = verify_e1(sys, {32, 32, 0.0625}, 50, 123, t_list);
  CHECK(r.pass);
  CHECK(r.bound_constant == doctest::Approx(sys.lipschitz_constant()));

  const ConditionReport c = verify_e1(constant_system(0.7), {16, 16, 1.0}, 50, 124, t_list);
  CHECK(c.pass);
  CHECK(c.bound_constant == 0.0);  // Lambda = 0 suffices
}

TEST_CASE("verify_e1 rejects non-Lipschitz growth") {
  const LeniaSystem gol{discretize_kernel({GolKernel{}, false}, 1.0), GrowthSpec{GolGrowth{}},
                        ClipBounds::unit()};
  const double t_list[] = {0.1};
  CHECK_THROWS_AS(verify_e1(gol, {16, 16, 1.0}, 5, 1, t_list), UnsupportedGrowthError);
}

TEST_CASE("verify_e2: constant growth on an interior path has zero defect") {
  const LeniaSystem sys = constant_system(0.5);
  const ScalarField f0 = quantized_blob({32, 32, 1.0}, 16.0, 16.0, 8.0, 0.25);
  const auto levels = e2_level_maxima(sys, f0, 3, 10);
  for (double v : levels) CHECK(v == 0.0);
  const ConditionReport r = verify_e2(sys, f0, 3, 10);
  CHECK(r.pass);
}

TEST_CASE("verify_e2: standard blob stays within the slack bound") {
  const LeniaSystem sys = standard_system();
  const ScalarField f0 =
      blob_field({64, 64, 0.0625}, ClipBounds::unit(), 2.0, 2.0, 1.5, 1.0);
  const ConditionReport r = verify_e2(sys, f0, 3, 10);
  CHECK(r.pass);
  CHECK(r.bound_constant ==
        doctest::Approx(4.0 * sys.lipschitz_constant() * sys.speed_bound()));
}

TEST_CASE("verify_speed: zero violations on random samples") {
  const ConditionReport r = verify_speed(standard_system(), {32, 32, 0.0625}, 100, 9);
  CHECK(r.pass);
  CHECK(r.bound_constant == 1.0);
  CHECK(r.speed_c1 == 0.0);
  CHECK(r.speed_c2 == 1.0);
}

TEST_CASE("verify_speed: constant growth attains the bound with equality") {
  const LeniaSystem sys = constant_system(0.5);
  // Interior field, dyadic s and t: d = |s-t| * |c| exactly.
  const ScalarField f(16, 16, 1.0, ClipBounds::unit(), 0.25);
  const double s = 0.25, t = 0.125;
  const double d = sup_distance(lenia_step(f, sys, s), lenia_step(f, sys, t));
  CHECK(d == std::abs(s - t) * 0.5);
}

TEST_CASE("convergence study: constant growth telescopes to zero distances") {
  const LeniaSystem sys = constant_system(0.5);
  const ScalarField f0 = quantized_blob({16, 16, 1.0}, 8.0, 8.0, 4.0, 0.25);
  const ConvergenceReport r = convergence_study(sys, f0, 0.5, 6);
  for (const auto& row : r.refinements) CHECK(row.distance == 0.0);
}

TEST_CASE("convergence study: stationary initial state gives zero distances") {
  // f == 0 with G(0) < 0 stays put: every Euler curve is constant.
  const LeniaSystem sys = standard_system();
  const ScalarField f0(32, 32, 0.0625, ClipBounds::unit(), 0.0);
  const ConvergenceReport r = convergence_study(sys, f0, 1.0, 5);
  for (const auto& row : r.refinements) CHECK(row.distance == 0.0);
}

TEST_CASE("convergence study: refinement rows and order estimates") {
  const LeniaSystem sys = standard_system();
  const ScalarField f0 = blob_field({64, 64, 0.0625}, ClipBounds::unit(), 2.0, 2.0, 1.5, 1.0);
  const ConvergenceReport r = convergence_study(sys, f0, 1.0, 6);
  REQUIRE(r.refinements.size() == 5);  // n = 2, 4, 8, 16, 32
  CHECK(r.refinements.front().n == 2);
  CHECK(r.refinements.back().n == 32);
  CHECK(r.orders.size() == 4);
  CHECK(r.monotone_from(8));
}

TEST_CASE("tangency residuals: constant growth is exactly flow-like") {
  const LeniaSystem sys = constant_system(0.5);
  const ScalarField f0 = quantized_blob({16, 16, 1.0}, 8.0, 8.0, 4.0, 0.25);
  const double h_list[] = {0.25, 0.125, 0.0625};
  const auto residuals = tangency_residual(sys, f0, 0.5, h_list, 1024);
  for (const auto& [h, res] : residuals) CHECK(res == 0.0);
}

TEST_CASE("tangency residuals: stationary state gives zero residuals") {
  const LeniaSystem sys = standard_system();
  const ScalarField f0(32, 32, 0.0625, ClipBounds::unit(), 0.0);
  const double h_list[] = {0.25, 0.125};
  const auto residuals = tangency_residual(sys, f0, 0.5, h_list, 256);
  for (const auto& [h, res] : residuals) CHECK(res == 0.0);
}

TEST_CASE("tangency residuals require a deep reference flow") {
  const LeniaSystem sys = constant_system(0.5);
  const ScalarField f0(16, 16, 1.0, ClipBounds::unit(), 0.25);
  const double h_list[] = {0.25};
  CHECK_THROWS_AS(tangency_residual(sys, f0, 0.5, h_list, 128), DomainError);
}

TEST_CASE("support bound check: zero violations on a centered blob") {
  // Domain 4x4 space units, kernel support radius ~0.97: one ring of the
  // bound fits before the torus wraps, so t_total stays below a/rate.
  const LeniaSystem sys = standard_system();
  const ScalarField f0 = blob_field({64, 64, 0.0625}, ClipBounds::unit(), 2.0, 2.0, 0.8, 0.9);
  const SupportBoundReport r = support_bound_check(sys, f0, 0.12, 4);
  CHECK(r.pass());
  CHECK(r.cells_checked > 0);
  CHECK(r.hypothesis_a == doctest::Approx(0.15 - 0.015 * std::sqrt(2.0 * std::log(2.0))));
}

TEST_CASE("support bound check refuses a run that would wrap the torus") {
  const LeniaSystem sys = standard_system();
  const ScalarField f0 = blob_field({64, 64, 0.0625}, ClipBounds::unit(), 2.0, 2.0, 0.8, 0.9);
  CHECK_THROWS_AS(support_bound_check(sys, f0, 0.8, 8), HypothesisError);
}

TEST_CASE("support bound check: rectifier growth violates the hypothesis") {
  const LeniaSystem sys{discretize_kernel({GolKernel{}, false}, 1.0),
                        GrowthSpec{RectifierGrowth{}}, ClipBounds::unit()};
  const ScalarField f0 = single_cell_field({32, 32, 1.0}, ClipBounds::unit(), 16, 16, 1.0);
  CHECK_THROWS_AS(support_bound_check(sys, f0, 1.0, 4), HypothesisError);
}

TEST_CASE("monotone growth check") {
  const LeniaSystem sys{discretize_kernel({GolKernel{}, false}, 1.0),
                        GrowthSpec{RectifierGrowth{}}, ClipBounds::unit()};
  SUBCASE("single positive cell grows monotonically") {
    const ScalarField f0 = single_cell_field({32, 32, 1.0}, ClipBounds::unit(), 16, 16, 0.5);
    const MonotoneReport r = monotone_growth_check(sys, f0, 10, 0.25);
    CHECK(r.pass());
    REQUIRE(r.support_cells.size() == 11);
    for (std::size_t i = 1; i < r.support_cells.size(); ++i) {
      CHECK(r.support_cells[i] >= r.support_cells[i - 1]);
    }
    CHECK(r.support_cells.back() > r.support_cells.front());
  }
  SUBCASE("zero field stays zero") {
    const ScalarField f0(16, 16, 1.0, ClipBounds::unit(), 0.0);
    const MonotoneReport r = monotone_growth_check(sys, f0, 5, 0.25);
    CHECK(r.pass());
    for (long c : r.support_cells) CHECK(c == 0);
  }
  SUBCASE("hypothesis violation: kernel with zero center weight") {
    const LeniaSystem bad{discretize_kernel({ExpBumpKernel{1.0}, true}, 0.25),
                          GrowthSpec{RectifierGrowth{}}, ClipBounds::unit()};
    const ScalarField f0 = single_cell_field({32, 32, 0.25}, ClipBounds::unit(), 16, 16, 0.5);
    CHECK_THROWS_AS(monotone_growth_check(bad, f0, 3, 0.25), HypothesisError);
  }
}

TEST_CASE("extinction time") {
  SUBCASE("zero field is extinct at step 0") {
    const LeniaSystem sys = standard_system();
    const ScalarField f0(32, 32, 0.0625, ClipBounds::unit(), 0.0);
    CHECK(extinction_time(sys, f0, 0.1, 10) == 0);
  }
  SUBCASE("a small blob under narrow-band growth dies in finite time") {
    const LeniaSystem sys = standard_system();
    const ScalarField f0 = blob_field({64, 64, 0.0625}, ClipBounds::unit(), 2.0, 2.0, 1.0, 0.5);
    const auto k = extinction_time(sys, f0, 0.1, 200);
    REQUIRE(k.has_value());
    CHECK(*k > 0);
  }
  SUBCASE("asymptotic dynamics never reach exact zero") {
    const LeniaSystem sys = standard_system();
    const ScalarField f0 = blob_field({64, 64, 0.0625}, ClipBounds::unit(), 2.0, 2.0, 1.0, 0.5);
    CHECK_FALSE(extinction_time(sys, f0, 0.1, 500, DynamicsKind::asymptotic).has_value());
  }
}

TEST_CASE("irreversibility witness: collision forward, asymptotic stays apart") {
  const LeniaSystem sys = standard_system(0.25);
  const IrreversibilityWitness w = irreversibility_demo(sys);
  CHECK(w.input_distance > 0.0);
  CHECK(w.image_distance == 0.0);
  // The same pair under asymptotic dynamics remains distinct.
  const ScalarField af = asymptotic_step(w.f, sys, w.t);
  const ScalarField ag = asymptotic_step(w.g, sys, w.t);
  CHECK(sup_distance(af, ag) > 0.0);
}

TEST_CASE("lower-barrier collision variant") {
  const LeniaSystem sys = constant_system(-1.0);
  const ScalarField f(16, 16, 1.0, ClipBounds::unit(), 0.05);
  const ScalarField g(16, 16, 1.0, ClipBounds::unit(), 0.1);
  CHECK(sup_distance(lenia_step(f, sys, 0.1), lenia_step(g, sys, 0.1)) == 0.0);
}

TEST_CASE("check line format") {
  CHECK(check_line("speed", true, 0.0, 1.0) == "CHECK speed pass max_violation=0 constant=1");
  CHECK(check_line("e1", false, 0.5, 2.0) == "CHECK e1 fail max_violation=0.5 constant=2");
}

TEST_CASE("report csv writers") {
  namespace fs = std::filesystem;
  const std::string dir = (fs::temp_directory_path() / "clipflow_csv").string();
  fs::create_directories(dir);

  const ConditionReport r = verify_speed(standard_system(), {32, 32, 0.0625}, 20, 41);
  write_condition_csv(std::vector<ConditionReport>{r}, dir + "/cond.csv");
  std::ifstream cond(dir + "/cond.csv");
  std::string header, row;
  std::getline(cond, header);
  std::getline(cond, row);
  CHECK(header == "condition,samples,bound_constant,max_violation,pass,c1,c2");
  CHECK(row.find("speed,20,1,") == 0);

  const LeniaSystem sys = constant_system(0.5);
  const ScalarField f0 = quantized_blob({16, 16, 1.0}, 8.0, 8.0, 4.0, 0.25);
  ConvergenceReport conv_report = convergence_study(sys, f0, 0.5, 4);
  write_convergence_csv(conv_report, dir + "/conv.csv");
  std::ifstream conv(dir + "/conv.csv");
  std::getline(conv, header);
  CHECK(header == "n,distance,order_estimate");

  write_identity_csv(verify_clip_identities(10, 1), dir + "/ident.csv");
  std::ifstream ident(dir + "/ident.csv");
  std::getline(ident, header);
  CHECK(header == "identity_name,samples,max_violation");

  fs::remove_all(dir);
}
