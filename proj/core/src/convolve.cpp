#include "clipflow/convolve.hpp"

#include <fftw3.h>

#include <complex>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "clipflow/parallel.hpp"

namespace clipflow {

namespace {

void check_kernel_fits(const ScalarField& f, const DiscreteKernel& k) {
  if (k.diameter() > f.width() || k.diameter() > f.height()) {
    throw DimensionError("convolve: kernel diameter " + std::to_string(k.diameter()) +
                         " exceeds grid " + std::to_string(f.width()) + "x" +
                         std::to_string(f.height()));
  }
}

struct FftwDeleter {
  void operator()(double* p) const { fftw_free(p); }
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

using RealBuf = std::unique_ptr<double[], FftwDeleter>;
using ComplexBuf = std::unique_ptr<fftw_complex[], FftwDeleter>;

RealBuf alloc_real(std::size_t n) { return RealBuf(fftw_alloc_real(n)); }
ComplexBuf alloc_complex(std::size_t n) { return ComplexBuf(fftw_alloc_complex(n)); }

/// Plans and kernel spectra per grid size. FFTW planning is not thread-safe,
/// so creation is serialized; fftw_execute_dft_* on distinct buffers is safe
/// to run concurrently.
class FftContext {
 public:
  static FftContext& instance() {
    static FftContext ctx;
    return ctx;
  }

  struct Plans {
    int width = 0, height = 0;
    std::size_t spectrum_size = 0;
    fftw_plan forward = nullptr;   // r2c
    fftw_plan backward = nullptr;  // c2r

    ~Plans() {
      if (forward != nullptr) fftw_destroy_plan(forward);
      if (backward != nullptr) fftw_destroy_plan(backward);
    }
  };

  std::shared_ptr<Plans> plans_for(int width, int height) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto& slot = plans_[{width, height}];
    if (!slot) {
      auto p = std::make_shared<Plans>();
      p->width = width;
      p->height = height;
      p->spectrum_size = static_cast<std::size_t>(height) * (width / 2 + 1);
      const std::size_t cells = static_cast<std::size_t>(width) * height;
      RealBuf real = alloc_real(cells);
      ComplexBuf cplx = alloc_complex(p->spectrum_size);
      p->forward = fftw_plan_dft_r2c_2d(height, width, real.get(), cplx.get(), FFTW_ESTIMATE);
      p->backward = fftw_plan_dft_c2r_2d(height, width, cplx.get(), real.get(), FFTW_ESTIMATE);
      slot = std::move(p);
    }
    return slot;
  }

  /// Spectrum of the kernel zero-embedded into a width x height grid with its
  /// center at index (0, 0). Cached per (kernel payload, grid size).
  std::shared_ptr<const std::vector<std::complex<double>>> kernel_spectrum(
      const DiscreteKernel& k, int width, int height) {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = spectra_.find({k.cache_key(), width, height});
      if (it != spectra_.end()) return it->second;
    }

    auto plans = plans_for(width, height);
    const std::size_t cells = static_cast<std::size_t>(width) * height;
    RealBuf embedded = alloc_real(cells);
    std::memset(embedded.get(), 0, cells * sizeof(double));
    const int r = k.radius_cells();
    for (int oy = -r; oy <= r; ++oy) {
      const int y = ((oy % height) + height) % height;
      for (int ox = -r; ox <= r; ++ox) {
        const int x = ((ox % width) + width) % width;
        embedded[static_cast<std::size_t>(y) * width + x] += k.weight_at(oy, ox);
      }
    }
    ComplexBuf cplx = alloc_complex(plans->spectrum_size);
    fftw_execute_dft_r2c(plans->forward, embedded.get(), cplx.get());
    auto spectrum = std::make_shared<std::vector<std::complex<double>>>(plans->spectrum_size);
    for (std::size_t i = 0; i < plans->spectrum_size; ++i) {
      (*spectrum)[i] = {cplx[i][0], cplx[i][1]};
    }

    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, _] = spectra_.emplace(std::make_tuple(k.cache_key(), width, height), spectrum);
    return it->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, std::shared_ptr<Plans>> plans_;
  std::map<std::tuple<std::uint64_t, int, int>,
           std::shared_ptr<const std::vector<std::complex<double>>>>
      spectra_;
};

}  // namespace

ScalarField convolve_direct(const ScalarField& f, const DiscreteKernel& k) {
  check_kernel_fits(f, k);
  const int w = f.width();
  const int h = f.height();
  const int r = k.radius_cells();
  ScalarField out(w, h, f.dx(), ClipBounds::unbounded());
  const auto kw = k.weights();
  auto outv = out.values();

  par::for_range(h, [&](std::int64_t y0, std::int64_t y1) {
    for (std::int64_t y = y0; y < y1; ++y) {
      for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        std::size_t ki = 0;
        for (int oy = -r; oy <= r; ++oy) {
          const int yy = (static_cast<int>(y) - oy + h) % h;  // |oy| <= r < h
          for (int ox = -r; ox <= r; ++ox, ++ki) {
            const int xx = (x - ox + w) % w;
            acc += kw[ki] * f.at(yy, xx);
          }
        }
        outv[out.index(static_cast<int>(y), x)] = acc;
      }
    }
  });
  return out;
}

ScalarField convolve_fft(const ScalarField& f, const DiscreteKernel& k) {
  check_kernel_fits(f, k);
  const int w = f.width();
  const int h = f.height();
  auto& ctx = FftContext::instance();
  auto plans = ctx.plans_for(w, h);
  auto spectrum = ctx.kernel_spectrum(k, w, h);

  const std::size_t cells = static_cast<std::size_t>(w) * h;
  RealBuf real = alloc_real(cells);
  ComplexBuf cplx = alloc_complex(plans->spectrum_size);
  std::memcpy(real.get(), f.values().data(), cells * sizeof(double));
  fftw_execute_dft_r2c(plans->forward, real.get(), cplx.get());

  const auto& ks = *spectrum;
  for (std::size_t i = 0; i < plans->spectrum_size; ++i) {
    const double re = cplx[i][0] * ks[i].real() - cplx[i][1] * ks[i].imag();
    const double im = cplx[i][0] * ks[i].imag() + cplx[i][1] * ks[i].real();
    cplx[i][0] = re;
    cplx[i][1] = im;
  }
  fftw_execute_dft_c2r(plans->backward, cplx.get(), real.get());

  ScalarField out(w, h, f.dx(), ClipBounds::unbounded());
  const double scale = 1.0 / static_cast<double>(cells);
  auto outv = out.values();
  for (std::size_t i = 0; i < cells; ++i) outv[i] = real[i] * scale;
  return out;
}

bool fft_grid_eligible(int width, int height) {
  auto pow2 = [](int n) { return n > 0 && (n & (n - 1)) == 0; };
  return pow2(width) && pow2(height);
}

ScalarField convolve(const ScalarField& f, const DiscreteKernel& k) {
  if (fft_grid_eligible(f.width(), f.height())) return convolve_fft(f, k);
  return convolve_direct(f, k);
}

ScalarField kernel_as_field(const DiscreteKernel& k) {
  const int d = k.diameter();
  ScalarField out(d, d, k.dx(), ClipBounds::unbounded());
  const auto w = k.weights();
  auto v = out.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = w[i];
  return out;
}

}  // namespace clipflow
