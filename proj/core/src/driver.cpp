#include "clipflow/driver.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include "clipflow/field_io.hpp"
#include "clipflow/generators.hpp"
#include "clipflow/identities.hpp"
#include "clipflow/rng.hpp"

namespace clipflow {

namespace {

namespace fs = std::filesystem;

std::string frame_stem(long step) {
  std::ostringstream os;
  os << "frame_" << std::setw(6) << std::setfill('0') << step;
  return os.str();
}

/// Channels whose extinction means the creature died; the food channel of
/// depleting_food / ecosystem does not count.
std::size_t creature_channel_count(ModelKind model, std::size_t total) {
  switch (model) {
    case ModelKind::depleting_food: return 1;
    case ModelKind::ecosystem: return 2;
    default: return total;
  }
}

struct SimulationState {
  MultiField state;
  std::optional<ScalarField> static_food;
};

SimulationState build_state(const SimConfig& cfg) {
  SimulationState s;
  s.state.channels.push_back(build_initial(cfg));
  switch (cfg.model) {
    case ModelKind::lenia:
    case ModelKind::asymptotic:
    case ModelKind::gol:
      break;
    case ModelKind::food:
      s.static_food = build_food_field(cfg);
      break;
    case ModelKind::depleting_food:
      s.state.channels.push_back(build_food_field(cfg));
      break;
    case ModelKind::predator_prey:
      s.state.channels.push_back(
          build_initial_channel(cfg, cfg.init2, cfg.bounds, cfg.seed + 1));
      break;
    case ModelKind::ecosystem:
      s.state.channels.push_back(
          build_initial_channel(cfg, cfg.init2, cfg.bounds, cfg.seed + 1));
      s.state.channels.push_back(build_food_field(cfg));
      break;
  }
  return s;
}

MultiField advance(const SimConfig& cfg, const SimulationState& s, const LeniaSystem& sys,
                   const EcosystemSystem* eco) {
  MultiField next;
  switch (cfg.model) {
    case ModelKind::lenia:
      next.channels.push_back(lenia_step(s.state.channels[0], sys, cfg.t_step));
      break;
    case ModelKind::asymptotic:
      next.channels.push_back(asymptotic_step(s.state.channels[0], sys, cfg.t_step));
      break;
    case ModelKind::gol:
      next.channels.push_back(gol_step(s.state.channels[0]));
      break;
    case ModelKind::food:
      next.channels.push_back(combined_step(s.state.channels[0], *s.static_food, sys, cfg.t_step));
      break;
    case ModelKind::depleting_food:
      next = depleting_food_step(s.state, sys, cfg.t_step);
      break;
    case ModelKind::predator_prey:
      next = predator_prey_step(s.state, *eco, cfg.t_step);
      break;
    case ModelKind::ecosystem:
      next = ecosystem_step(s.state, *eco, cfg.t_step);
      break;
  }
  return next;
}

void write_frame(const MultiField& state, const std::string& dir, long step) {
  const std::string stem = (fs::path(dir) / frame_stem(step)).string();
  write_field_file(state, stem + ".lenf");
  for (std::size_t c = 0; c < state.channels.size(); ++c) {
    render_pgm(state.channels[c], stem + "_c" + std::to_string(c) + ".pgm");
  }
  // Post-write re-validation: the round trip must be bit-exact and within
  // bounds.
  const MultiField back = read_field_file(stem + ".lenf");
  if (sup_distance(back, state) != 0.0) {
    throw IoError("frame round-trip mismatch for " + stem + ".lenf");
  }
}

}  // namespace

LeniaSystem build_system(const SimConfig& cfg) {
  return LeniaSystem{discretize_kernel(cfg.kernel, cfg.grid.dx), cfg.growth, cfg.bounds};
}

EcosystemSystem build_ecosystem(const SimConfig& cfg) {
  if (!cfg.has_kernel2 || !cfg.has_growth2) {
    throw DomainError("build_ecosystem: model '" + std::string(model_name(cfg.model)) +
                      "' has no prey kernel/growth");
  }
  return EcosystemSystem{discretize_kernel(cfg.kernel, cfg.grid.dx), cfg.growth,
                         discretize_kernel(cfg.kernel2, cfg.grid.dx), cfg.growth2,
                         ClipBounds{cfg.food.lower, cfg.food.upper}};
}

ScalarField build_initial_channel(const SimConfig& cfg, const InitSpec& init, ClipBounds bounds,
                                  std::uint64_t seed) {
  switch (init.kind) {
    case InitSpec::Kind::blob:
      if (cfg.model == ModelKind::gol) {
        throw DomainError("gol model needs a binary initial condition (random, single_cell, file)");
      }
      return blob_field(cfg.grid, bounds, init.cx, init.cy, init.radius, init.peak);
    case InitSpec::Kind::random:
      if (cfg.model == ModelKind::gol) {
        return random_binary_field(cfg.grid, seed);
      }
      return random_field(cfg.grid, bounds, seed);
    case InitSpec::Kind::single_cell:
      return single_cell_field(cfg.grid, bounds, init.cell_y, init.cell_x, init.cell_value);
    case InitSpec::Kind::file: {
      ScalarField f = read_scalar_field_file(init.path);
      if (f.shape() != cfg.grid) {
        throw DimensionError("initial condition file '" + init.path +
                             "' does not match the configured grid");
      }
      return f;
    }
  }
  throw DomainError("unreachable init kind");
}

ScalarField build_initial(const SimConfig& cfg) {
  return build_initial_channel(cfg, cfg.init, cfg.bounds, cfg.seed);
}

ScalarField build_food_field(const SimConfig& cfg) {
  const ClipBounds fb{cfg.food.lower, cfg.food.upper};
  switch (cfg.food.kind) {
    case FoodSpec::Kind::constant: {
      ScalarField f(cfg.grid, fb, cfg.food.value);
      f.validate();
      return f;
    }
    case FoodSpec::Kind::blob:
      return blob_field(cfg.grid, fb, cfg.food.cx, cfg.food.cy, cfg.food.radius, cfg.food.peak);
    case FoodSpec::Kind::file: {
      ScalarField f = read_scalar_field_file(cfg.food.path);
      if (f.shape() != cfg.grid) {
        throw DimensionError("food file '" + cfg.food.path +
                             "' does not match the configured grid");
      }
      return f;
    }
  }
  throw DomainError("unreachable food kind");
}

int cmd_simulate(const SimConfig& cfg, std::ostream& log) {
  try {
    const bool needs_system = cfg.model != ModelKind::gol;
    LeniaSystem sys = needs_system
                          ? build_system(cfg)
                          : LeniaSystem{discretize_kernel({GolKernel{}, false}, cfg.grid.dx),
                                        GrowthSpec{GolGrowth{}}, ClipBounds::unit()};
    std::optional<EcosystemSystem> eco;
    if (cfg.model == ModelKind::predator_prey || cfg.model == ModelKind::ecosystem) {
      eco = build_ecosystem(cfg);
    }

    SimulationState s = build_state(cfg);
    const std::size_t creatures = creature_channel_count(cfg.model, s.state.channels.size());

    if (cfg.output.frames_every > 0) {
      fs::create_directories(cfg.output.frame_dir);
    }
    std::ofstream metrics(cfg.output.metrics_path, std::ios::trunc);
    if (!metrics) throw IoError("cannot open metrics file '" + cfg.output.metrics_path + "'");
    metrics.precision(17);
    metrics << "step,time";
    for (std::size_t c = 0; c < s.state.channels.size(); ++c) {
      metrics << ",mass_c" << c << ",min_c" << c << ",max_c" << c;
    }
    metrics << ",sup_change,extinct\n";

    bool extinct_seen = false;
    auto emit_row = [&](long step, double sup_change) {
      bool extinct = true;
      for (std::size_t c = 0; c < creatures; ++c) {
        extinct = extinct && is_identically_zero(s.state.channels[c]);
      }
      extinct_seen = extinct_seen || extinct;
      metrics << step << "," << step * cfg.t_step;
      for (const auto& ch : s.state.channels) {
        metrics << "," << mass(ch) << "," << min_value(ch) << "," << max_value(ch);
      }
      metrics << "," << sup_change << "," << (extinct ? 1 : 0) << "\n";
      if (cfg.output.frames_every > 0 && step % cfg.output.frames_every == 0) {
        write_frame(s.state, cfg.output.frame_dir, step);
      }
    };

    emit_row(0, 0.0);
    for (long step = 1; step <= cfg.steps; ++step) {
      MultiField next = advance(cfg, s, sys, eco ? &*eco : nullptr);
      const double sup_change = sup_distance(next, s.state);
      s.state = std::move(next);
      emit_row(step, sup_change);
    }
    if (!metrics) throw IoError("write failed for '" + cfg.output.metrics_path + "'");
    metrics.close();

    log << "simulate: model=" << model_name(cfg.model) << " steps=" << cfg.steps
        << " grid=" << cfg.grid.width << "x" << cfg.grid.height
        << (extinct_seen ? " (creature went extinct)" : "") << "\n";
    return extinct_seen ? kExitExtinct : kExitOk;
  } catch (const IoError& e) {
    log << "simulate: I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    log << "simulate: I/O error: " << e.what() << "\n";
    return kExitIo;
  }
}

namespace {

struct VerifyContext {
  const std::optional<SimConfig>& cfg;
  std::uint64_t seed;
  std::ostream& out;
  bool all_pass = true;
  bool ran_any = false;

  const SimConfig& require_config(std::string_view suite) {
    if (!cfg.has_value()) {
      throw UnsupportedGrowthError("verify " + std::string(suite) +
                                   ": needs --config to define the system under test");
    }
    return *cfg;
  }

  void emit(std::string_view name, bool pass, double violation, double constant) {
    out << check_line(name, pass, violation, constant) << "\n";
    all_pass = all_pass && pass;
    ran_any = true;
  }
};

void verify_clip_suite(VerifyContext& ctx) {
  const IdentityReport report = verify_clip_identities(1'000'000, ctx.seed);
  for (const auto& check : report.checks) {
    ctx.emit("clip." + check.name, check.pass(), check.max_violation, check.tolerance);
  }
}

void verify_gol_equiv_suite(VerifyContext& ctx) {
  const GridShape shape{64, 64, 1.0};
  long mismatches = 0;
  SplitMix64 rng(ctx.seed);
  for (int b = 0; b < 500; ++b) {
    ScalarField direct = random_binary_field(shape, rng.next_u64());
    ScalarField conv = direct;
    for (int s = 0; s < 50; ++s) {
      direct = gol_step(direct);
      conv = gol_step_conv(conv);
      if (sup_distance(direct, conv) != 0.0) ++mismatches;
    }
  }
  ctx.emit("gol_equiv", mismatches == 0, static_cast<double>(mismatches), 0.0);
}

void verify_e1_suite(VerifyContext& ctx) {
  const SimConfig& cfg = ctx.require_config("e1");
  const LeniaSystem sys = build_system(cfg);
  const double t_list[] = {1e-3, 1e-2, 1e-1};
  const ConditionReport r = verify_e1(sys, cfg.grid, 200, ctx.seed, t_list);
  ctx.emit("e1", r.pass, r.max_violation, r.bound_constant);
}

void verify_e2_suite(VerifyContext& ctx) {
  const SimConfig& cfg = ctx.require_config("e2");
  const LeniaSystem sys = build_system(cfg);
  const ScalarField f0 = build_initial(cfg);
  const ConditionReport r = verify_e2(sys, f0);
  ctx.emit("e2", r.pass, r.max_violation, r.bound_constant);
}

void verify_speed_suite(VerifyContext& ctx) {
  const SimConfig& cfg = ctx.require_config("speed");
  const LeniaSystem sys = build_system(cfg);
  const ConditionReport r = verify_speed(sys, cfg.grid, 500, ctx.seed);
  ctx.emit("speed", r.pass, r.max_violation, r.bound_constant);
}

void verify_support_suite(VerifyContext& ctx) {
  const SimConfig& cfg = ctx.require_config("support");
  const LeniaSystem sys = build_system(cfg);
  const ScalarField f0 = build_initial(cfg);
  const SupportBoundReport r =
      support_bound_check(sys, f0, cfg.t_step * static_cast<double>(cfg.steps), cfg.steps);
  ctx.emit("support", r.pass(), static_cast<double>(r.violations), r.hypothesis_a);
}

void verify_monotone_suite(VerifyContext& ctx) {
  const SimConfig& cfg = ctx.require_config("monotone");
  const LeniaSystem sys = build_system(cfg);
  const ScalarField f0 = build_initial(cfg);
  const MonotoneReport r = monotone_growth_check(sys, f0, cfg.steps, cfg.t_step);
  ctx.emit("monotone", r.pass(),
           static_cast<double>(r.pointwise_violations + r.support_violations), 0.0);
}

}  // namespace

int cmd_verify(std::string_view suite, const std::optional<SimConfig>& cfg, std::uint64_t seed,
               std::ostream& out) {
  VerifyContext ctx{cfg, seed, out};
  try {
    if (suite == "clip") {
      verify_clip_suite(ctx);
    } else if (suite == "gol_equiv") {
      verify_gol_equiv_suite(ctx);
    } else if (suite == "e1") {
      verify_e1_suite(ctx);
    } else if (suite == "e2") {
      verify_e2_suite(ctx);
    } else if (suite == "speed") {
      verify_speed_suite(ctx);
    } else if (suite == "support") {
      verify_support_suite(ctx);
    } else if (suite == "monotone") {
      verify_monotone_suite(ctx);
    } else if (suite == "all") {
      // A single config cannot satisfy every suite's hypotheses (monotone
      // needs rectifier growth, the support bound needs a sign-banded one),
      // so `all` runs what applies and reports the rest as skipped.
      ctx.require_config("all");
      verify_clip_suite(ctx);
      verify_gol_equiv_suite(ctx);
      const std::pair<const char*, void (*)(VerifyContext&)> dependent[] = {
          {"e1", verify_e1_suite},      {"e2", verify_e2_suite},
          {"speed", verify_speed_suite}, {"support", verify_support_suite},
          {"monotone", verify_monotone_suite},
      };
      for (const auto& [name, run] : dependent) {
        try {
          run(ctx);
        } catch (const UnsupportedGrowthError& e) {
          out << "SKIP " << name << " " << e.what() << "\n";
        } catch (const HypothesisError& e) {
          out << "SKIP " << name << " " << e.what() << "\n";
        }
      }
    } else {
      out << "verify: unknown suite '" << suite
          << "' (expected clip, e1, e2, speed, support, monotone, gol_equiv, all)\n";
      return kExitUsage;
    }
  } catch (const UnsupportedGrowthError& e) {
    out << "verify: unsupported combination: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const HypothesisError& e) {
    out << "verify: unsupported combination: " << e.what() << "\n";
    return kExitUnsupported;
  }
  return ctx.all_pass ? kExitOk : kExitUsage;
}

int cmd_converge(const SimConfig& cfg, int levels, std::ostream& out) {
  if (levels < 2) {
    out << "converge: need --levels >= 2 (at least two refinement levels)\n";
    return kExitUsage;
  }
  const LeniaSystem sys = build_system(cfg);
  const ScalarField f0 = build_initial(cfg);
  const double t_total = cfg.t_step * static_cast<double>(cfg.steps);

  try {
    ConvergenceReport report = convergence_study(sys, f0, t_total, levels);
    const double h_list[] = {0x1p-2, 0x1p-3, 0x1p-4, 0x1p-5, 0x1p-6, 0x1p-7, 0x1p-8};
    report.tangency_residuals = tangency_residual(sys, f0, t_total, h_list, 1024);
    write_convergence_csv(report, cfg.output.metrics_path);
    write_tangency_csv(report.tangency_residuals, cfg.output.metrics_path + ".tangency.csv");

    for (const auto& row : report.refinements) {
      out << "refine n=" << row.n << " distance=" << row.distance << "\n";
    }
    const bool monotone = report.monotone_from(8);
    out << check_line("converge.monotone", monotone,
                      monotone ? 0.0 : 1.0, static_cast<double>(levels))
        << "\n";
    return monotone ? kExitOk : kExitUsage;
  } catch (const IoError& e) {
    out << "converge: I/O error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace clipflow
