#pragma once

#include <complex>

namespace layerstokes::fft {

/// Unnormalized in-place transforms (FFTW conventions: forward = e^{-i},
/// backward = e^{+i}).  Plan creation is serialized internally; execution on
/// distinct buffers is safe from multiple threads.

/// rank-2 tangential transform applied to each of the n_z innermost samples:
/// layout (n0, n1, n_z) contiguous, transform over (n0, n1).
void tangential(std::complex<double>* data, int n0, int n1, int n_z, bool forward);

/// full rank-3 transform of a contiguous (n0, n1, nz) block.
void full(std::complex<double>* data, int n0, int n1, int nz, bool forward);

}  // namespace layerstokes::fft
