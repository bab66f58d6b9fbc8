#pragma once

#include "clipflow/field.hpp"
#include "clipflow/kernel.hpp"

namespace clipflow {

/// out(x) = sum over offsets y of K(y) * f(x - y), toroidal wrap. Exact
/// reference path with a fixed per-cell summation order. The result carries
/// unbounded clip bounds. Throws DimensionError when the kernel diameter
/// exceeds either grid dimension.
ScalarField convolve_direct(const ScalarField& f, const DiscreteKernel& k);

/// Same circular convolution through real-to-complex FFTs of the grid and
/// the zero-embedded kernel. Bitwise deterministic; agrees with
/// convolve_direct within 1e-10 sup-distance at desk scale.
ScalarField convolve_fft(const ScalarField& f, const DiscreteKernel& k);

/// The FFT path is used only for power-of-two grids; everything else takes
/// the direct path.
bool fft_grid_eligible(int width, int height);

/// Dispatch: convolve_fft when eligible, convolve_direct otherwise.
ScalarField convolve(const ScalarField& f, const DiscreteKernel& k);

/// The kernel table as a (2r+1)^2 single-channel field, center at the grid
/// middle; lets kernels be dumped through the field container for
/// inspection.
ScalarField kernel_as_field(const DiscreteKernel& k);

}  // namespace clipflow
