#pragma once

#include <complex>
#include <vector>

namespace dd {

// Unnormalized complex DFT via FFTW.  forward applies e^{-i 2pi km/N},
// inverse applies e^{+i 2pi km/N} (no 1/N).  Plans are cached per size and
// created under a lock; execution is thread-safe on caller-owned buffers.
void fft_inplace(std::vector<std::complex<double>>& data, bool inverse);

}  // namespace dd
