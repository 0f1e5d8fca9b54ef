#include "dd/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "dd/errors.hpp"

namespace dd {

namespace {

std::mutex g_plan_mutex;

// FFTW_UNALIGNED lets cached plans execute on any caller buffer via the
// new-array interface; FFTW_ESTIMATE keeps planning deterministic.
fftw_plan plan_for(std::size_t n, bool inverse) {
    static std::map<std::pair<std::size_t, bool>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto it = cache.find({n, inverse});
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> scratch(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n),
                                   reinterpret_cast<fftw_complex*>(scratch.data()),
                                   reinterpret_cast<fftw_complex*>(scratch.data()),
                                   inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw numerical_error("fftw planning failed for size " + std::to_string(n));
    cache.emplace(std::make_pair(n, inverse), p);
    return p;
}

}  // namespace

void fft_inplace(std::vector<std::complex<double>>& data, bool inverse) {
    if (data.empty()) return;
    fftw_plan p = plan_for(data.size(), inverse);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data.data()),
                     reinterpret_cast<fftw_complex*>(data.data()));
}

}  // namespace dd
