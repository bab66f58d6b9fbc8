#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "clipflow/analysis.hpp"
#include "clipflow/config.hpp"
#include "clipflow/extensions.hpp"

namespace clipflow {

/// Process exit codes; the machine interface of the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;  // bad config, usage error, failed checks
inline constexpr int kExitIo = 2;
inline constexpr int kExitExtinct = 3;
inline constexpr int kExitUnsupported = 4;

/// Kernel/growth/bounds of the configured primary species, discretized at
/// the configured grid resolution.
LeniaSystem build_system(const SimConfig& cfg);

/// Both species plus food bounds (predator_prey / ecosystem models).
EcosystemSystem build_ecosystem(const SimConfig& cfg);

/// Initial condition for the primary channel (bounds = cfg.bounds, seeded
/// generators use cfg.seed; the prey channel uses cfg.seed + 1).
ScalarField build_initial(const SimConfig& cfg);
ScalarField build_initial_channel(const SimConfig& cfg, const InitSpec& init, ClipBounds bounds,
                                  std::uint64_t seed);
ScalarField build_food_field(const SimConfig& cfg);

/// Runs the configured model for cfg.steps steps, writing frames every
/// output.frames_every steps (0 = never) and the per-step metrics CSV.
/// Returns kExitOk, kExitExtinct if the creature channels hit exactly zero
/// at any step (the run still completes and writes everything), or kExitIo.
int cmd_simulate(const SimConfig& cfg, std::ostream& log);

/// Runs one verification suite ({clip, e1, e2, speed, support, monotone,
/// gol_equiv, all}), printing one CHECK line per check. Returns kExitOk iff
/// everything passed, kExitUnsupported for impossible suite/config
/// combinations (with an explanation on `out`).
int cmd_verify(std::string_view suite, const std::optional<SimConfig>& cfg, std::uint64_t seed,
               std::ostream& out);

/// Euler-curve refinement study up to 2^levels compositions plus the
/// tangency residual table; writes output.metrics_path and
/// output.metrics_path + ".tangency.csv". Returns kExitOk iff d_n is
/// non-increasing from n = 8 on.
int cmd_converge(const SimConfig& cfg, int levels, std::ostream& out);

}  // namespace clipflow
