#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "dd/errors.hpp"
#include "dd/numerics.hpp"

namespace dd {

// One-sided power spectral density S(omega) of the frequency-offset process,
// under the convention  <delta(t) delta(t+u)> = (1/pi) Int_0^inf S(w) cos(wu) dw,
// so S carries rad^2/s and S/w^2 dw is dimensionless phase variance.
class NoiseSpectrum {
  public:
    struct White {
        double s0 = 0.0;
        double omega_max = std::numeric_limits<double>::infinity();
    };
    struct PowerLaw {
        double amplitude = 0.0;  // S = amplitude * w^(-exponent) inside the band
        double exponent = 0.0;
        double omega_min = 0.0;
        double omega_max = 0.0;
    };
    struct Lorentzian {
        double sigma2 = 0.0;   // process variance, (rad/s)^2
        double gamma_c = 0.0;  // correlation rate, 1/s
    };
    struct LogLogSpline {
        std::vector<double> log_omega;  // ln(rad/s), strictly increasing, >= 4 knots
        std::vector<double> log_s;
        double omega_cutoff = std::numeric_limits<double>::infinity();
        CubicSpline spline;  // built on construction
    };
    struct Tabulated {
        std::vector<double> omega;  // strictly increasing
        std::vector<double> s;
    };

    static NoiseSpectrum zero() { return white(0.0); }
    static NoiseSpectrum white(double s0,
                               double omega_max = std::numeric_limits<double>::infinity());
    static NoiseSpectrum power_law(double amplitude, double exponent, double omega_min,
                                   double omega_max);
    static NoiseSpectrum lorentzian(double sigma2, double gamma_c);
    // Knots are (ln omega, ln S).  Flat below the first knot, last-segment
    // slope continued above the last, hard zero beyond omega_cutoff.
    static NoiseSpectrum loglog_spline(std::vector<double> log_omega,
                                       std::vector<double> log_s,
                                       double omega_cutoff =
                                           std::numeric_limits<double>::infinity());
    static NoiseSpectrum tabulated(std::vector<double> omega, std::vector<double> s);

    // spectrum_eval
    double operator()(double omega) const;

    std::string variant_name() const;

    // Upper edge of the support (inf when unbounded).
    double upper_cutoff() const;
    // Highest frequency a sampled realization must resolve.  Finite even for
    // unbounded variants (Lorentzian tail truncated where it carries ~0.25%
    // of the variance).
    double sampling_cutoff() const;
    // Frequencies where S has kinks or band edges; quadrature breakpoints.
    std::vector<double> breakpoints() const;

    template <typename T>
    const T* get_if() const {
        return std::get_if<T>(&v_);
    }

  private:
    std::variant<White, PowerLaw, Lorentzian, LogLogSpline, Tabulated> v_;
};

// Sampled realization delta(t_m), t_m = m*dt, of a zero-mean Gaussian process
// consistent with a NoiseSpectrum.
struct NoiseTrajectory {
    double dt = 0.0;              // seconds
    std::vector<double> samples;  // rad/s
    std::uint64_t seed = 0;
    bool rms_warning = false;

    double duration() const { return dt * static_cast<double>(samples.size() - 1); }
};

struct SynthesisOptions {
    double extension_factor = 4.0;   // synthesized period / requested duration
    double rms_warning_cap = 2.0 * 3.14159265358979323846 * 1e4;  // rad/s
};

// Harmonic superposition delta(t) = sum_k a_k cos(w_k t + theta_k) on a linear
// frequency grid covering [2pi/T_ext, pi/dt], a_k = sqrt(2 S(w_k) dw / pi),
// theta_k iid uniform.  Deterministic per seed; evaluated through one FFT.
NoiseTrajectory synthesize_trajectory(const NoiseSpectrum& spectrum, double dt,
                                      double duration, std::uint64_t seed,
                                      const SynthesisOptions& opts = {});

struct WelchOptions {
    std::size_t target_segments = 32;  // 50% overlap, Hann window
    std::size_t min_segment_length = 64;
};

// Averaged-periodogram PSD estimate, normalized to the same one-sided
// convention as NoiseSpectrum, returned as a tabulated spectrum.
NoiseSpectrum estimate_psd(const NoiseTrajectory& trajectory, const WelchOptions& opts = {});

}  // namespace dd
