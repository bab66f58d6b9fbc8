#include "clipflow/extensions.hpp"

#include <algorithm>
#include <string>

namespace clipflow {

namespace {

void check_step_size(double t, const char* op) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw StepSizeError(std::string(op) + ": step size " + std::to_string(t) +
                        " outside the arc field's time domain [0, 1]");
  }
}

void check_same_shape(const ScalarField& a, const ScalarField& b, const char* op) {
  if (!a.same_shape(b)) {
    throw DimensionError(std::string(op) + ": shape mismatch between channels");
  }
}

void check_channels(const MultiField& state, std::size_t expected, const char* op) {
  if (state.channels.size() != expected) {
    throw DimensionError(std::string(op) + ": expected " + std::to_string(expected) +
                         " channels, got " + std::to_string(state.channels.size()));
  }
  for (std::size_t i = 1; i < state.channels.size(); ++i) {
    check_same_shape(state.channels[i], state.channels[0], op);
  }
}

}  // namespace

ScalarField food_step(const ScalarField& f, const ScalarField& food, double t, ClipBounds bounds) {
  check_step_size(t, "food_step");
  check_same_shape(f, food, "food_step");
  ScalarField out(f.width(), f.height(), f.dx(), bounds);
  const auto fv = f.values();
  const auto pv = food.values();
  auto ov = out.values();
  for (std::size_t i = 0; i < fv.size(); ++i) {
    const double transfer = std::min(pv[i], fv[i]);
    ov[i] = std::min(std::max(fv[i] + t * transfer, bounds.lower), bounds.upper);
  }
  return out;
}

ScalarField combined_step(const ScalarField& f, const ScalarField& food, const LeniaSystem& sys,
                          double t) {
  check_step_size(t, "combined_step");
  check_same_shape(f, food, "combined_step");
  const ScalarField u = convolve(f, sys.kernel);
  ScalarField out(f.width(), f.height(), f.dx(), sys.bounds);
  const auto fv = f.values();
  const auto pv = food.values();
  const auto uv = u.values();
  auto ov = out.values();
  const ClipBounds b = sys.bounds;
  for (std::size_t i = 0; i < fv.size(); ++i) {
    const double rhs = std::min(pv[i], fv[i]) + sys.growth(uv[i]);
    ov[i] = std::min(std::max(fv[i] + t * rhs, b.lower), b.upper);
  }
  return out;
}

MultiField depleting_food_step(const MultiField& state, const LeniaSystem& sys, double t) {
  check_step_size(t, "depleting_food_step");
  check_channels(state, 2, "depleting_food_step");
  const ScalarField& f = state.channels[0];
  const ScalarField& food = state.channels[1];
  const ClipBounds fb = f.bounds();
  const ClipBounds pb = food.bounds();

  const ScalarField u = convolve(f, sys.kernel);
  ScalarField fout(f.width(), f.height(), f.dx(), fb);
  ScalarField pout(f.width(), f.height(), f.dx(), pb);
  const auto fv = f.values();
  const auto pv = food.values();
  const auto uv = u.values();
  auto fo = fout.values();
  auto po = pout.values();
  for (std::size_t i = 0; i < fv.size(); ++i) {
    const double transfer = std::min(pv[i], fv[i]);
    fo[i] = std::min(std::max(fv[i] + t * (transfer + sys.growth(uv[i])), fb.lower), fb.upper);
    po[i] = std::min(std::max(pv[i] - t * transfer, pb.lower), pb.upper);
  }
  MultiField out;
  out.channels.push_back(std::move(fout));
  out.channels.push_back(std::move(pout));
  return out;
}

MultiField predator_prey_step(const MultiField& state, const EcosystemSystem& sys, double t) {
  check_step_size(t, "predator_prey_step");
  check_channels(state, 2, "predator_prey_step");
  const ScalarField& f = state.channels[0];
  const ScalarField& g = state.channels[1];
  const ClipBounds fb = f.bounds();
  const ClipBounds gb = g.bounds();

  const ScalarField uf = convolve(f, sys.predator_kernel);
  const ScalarField ug = convolve(g, sys.prey_kernel);
  ScalarField fout(f.width(), f.height(), f.dx(), fb);
  ScalarField gout(f.width(), f.height(), f.dx(), gb);
  const auto fv = f.values();
  const auto gv = g.values();
  const auto ufv = uf.values();
  const auto ugv = ug.values();
  auto fo = fout.values();
  auto go = gout.values();
  for (std::size_t i = 0; i < fv.size(); ++i) {
    const double transfer = std::min(gv[i], fv[i]);
    fo[i] = std::min(std::max(fv[i] + t * (transfer + sys.predator_growth(ufv[i])), fb.lower),
                     fb.upper);
    go[i] = std::min(std::max(gv[i] + t * (-transfer + sys.prey_growth(ugv[i])), gb.lower),
                     gb.upper);
  }
  MultiField out;
  out.channels.push_back(std::move(fout));
  out.channels.push_back(std::move(gout));
  return out;
}

MultiField ecosystem_step(const MultiField& state, const EcosystemSystem& sys, double t) {
  check_step_size(t, "ecosystem_step");
  check_channels(state, 3, "ecosystem_step");
  const ScalarField& f = state.channels[0];
  const ScalarField& g = state.channels[1];
  const ScalarField& phi = state.channels[2];
  const ClipBounds fb = f.bounds();
  const ClipBounds gb = g.bounds();
  const ClipBounds pb = phi.bounds();

  const ScalarField uf = convolve(f, sys.predator_kernel);
  const ScalarField ug = convolve(g, sys.prey_kernel);
  ScalarField fout(f.width(), f.height(), f.dx(), fb);
  ScalarField gout(f.width(), f.height(), f.dx(), gb);
  ScalarField pout(f.width(), f.height(), f.dx(), pb);
  const auto fv = f.values();
  const auto gv = g.values();
  const auto pv = phi.values();
  const auto ufv = uf.values();
  const auto ugv = ug.values();
  auto fo = fout.values();
  auto go = gout.values();
  auto po = pout.values();
  for (std::size_t i = 0; i < fv.size(); ++i) {
    const double eat_prey = std::min(gv[i], fv[i]);
    const double eat_food = std::min(pv[i], gv[i]);
    fo[i] = std::min(std::max(fv[i] + t * (eat_prey + sys.predator_growth(ufv[i])), fb.lower),
                     fb.upper);
    go[i] = std::min(
        std::max(gv[i] + t * (-eat_prey + eat_food + sys.prey_growth(ugv[i])), gb.lower), gb.upper);
    po[i] = std::min(std::max(pv[i] - t * eat_food, pb.lower), pb.upper);
  }
  MultiField out;
  out.channels.push_back(std::move(fout));
  out.channels.push_back(std::move(gout));
  out.channels.push_back(std::move(pout));
  return out;
}

MultiField ecosystem_rhs(const MultiField& state, const EcosystemSystem& sys) {
  check_channels(state, 3, "ecosystem_rhs");
  const ScalarField& f = state.channels[0];
  const ScalarField& g = state.channels[1];
  const ScalarField& phi = state.channels[2];

  const ScalarField uf = convolve(f, sys.predator_kernel);
  const ScalarField ug = convolve(g, sys.prey_kernel);
  ScalarField vf(f.width(), f.height(), f.dx(), ClipBounds::unbounded());
  ScalarField vg(f.width(), f.height(), f.dx(), ClipBounds::unbounded());
  ScalarField vp(f.width(), f.height(), f.dx(), ClipBounds::unbounded());
  const auto fv = f.values();
  const auto gv = g.values();
  const auto pv = phi.values();
  const auto ufv = uf.values();
  const auto ugv = ug.values();
  auto vfo = vf.values();
  auto vgo = vg.values();
  auto vpo = vp.values();
  for (std::size_t i = 0; i < fv.size(); ++i) {
    const double eat_prey = std::min(gv[i], fv[i]);
    const double eat_food = std::min(pv[i], gv[i]);
    vfo[i] = eat_prey + sys.predator_growth(ufv[i]);
    vgo[i] = -eat_prey + eat_food + sys.prey_growth(ugv[i]);
    vpo[i] = -eat_food;
  }
  MultiField out;
  out.channels.push_back(std::move(vf));
  out.channels.push_back(std::move(vg));
  out.channels.push_back(std::move(vp));
  return out;
}

}  // namespace clipflow
