#include "dd/noise.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "dd/fft.hpp"

namespace dd {

namespace {

constexpr double kPi = std::numbers::pi;

// Uniform in [0,1) from the top 53 bits; identical across standard libraries.
double canonical(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

NoiseSpectrum NoiseSpectrum::white(double s0, double omega_max) {
    if (s0 < 0.0) throw validation_error("white spectrum: S0 must be >= 0");
    if (!(omega_max > 0.0)) throw validation_error("white spectrum: omega_max must be > 0");
    NoiseSpectrum s;
    s.v_ = White{s0, omega_max};
    return s;
}

NoiseSpectrum NoiseSpectrum::power_law(double amplitude, double exponent, double omega_min,
                                       double omega_max) {
    if (amplitude < 0.0) throw validation_error("power-law spectrum: amplitude must be >= 0");
    if (!(omega_min > 0.0) || !(omega_max > omega_min))
        throw validation_error("power-law spectrum: need 0 < omega_min < omega_max");
    NoiseSpectrum s;
    s.v_ = PowerLaw{amplitude, exponent, omega_min, omega_max};
    return s;
}

NoiseSpectrum NoiseSpectrum::lorentzian(double sigma2, double gamma_c) {
    if (sigma2 < 0.0) throw validation_error("lorentzian spectrum: variance must be >= 0");
    if (!(gamma_c > 0.0))
        throw validation_error("lorentzian spectrum: correlation rate must be > 0");
    NoiseSpectrum s;
    s.v_ = Lorentzian{sigma2, gamma_c};
    return s;
}

NoiseSpectrum NoiseSpectrum::loglog_spline(std::vector<double> log_omega,
                                           std::vector<double> log_s, double omega_cutoff) {
    if (log_omega.size() < 4)
        throw validation_error("log-log spline spectrum: need >= 4 knots");
    if (log_omega.size() != log_s.size())
        throw validation_error("log-log spline spectrum: knot arrays must match");
    for (std::size_t i = 1; i < log_omega.size(); ++i)
        if (!(log_omega[i] > log_omega[i - 1]))
            throw validation_error("log-log spline spectrum: knots must increase in log omega");
    if (!(omega_cutoff > std::exp(log_omega.front())))
        throw validation_error("log-log spline spectrum: cutoff below first knot");
    LogLogSpline sp;
    sp.spline = CubicSpline(log_omega, log_s);
    sp.log_omega = std::move(log_omega);
    sp.log_s = std::move(log_s);
    sp.omega_cutoff = omega_cutoff;
    NoiseSpectrum s;
    s.v_ = std::move(sp);
    return s;
}

NoiseSpectrum NoiseSpectrum::tabulated(std::vector<double> omega, std::vector<double> s) {
    if (omega.size() < 2 || omega.size() != s.size())
        throw validation_error("tabulated spectrum: need >= 2 matching samples");
    for (std::size_t i = 1; i < omega.size(); ++i)
        if (!(omega[i] > omega[i - 1]))
            throw validation_error("tabulated spectrum: frequencies must increase");
    for (double v : s)
        if (v < 0.0 || !std::isfinite(v))
            throw validation_error("tabulated spectrum: values must be finite and >= 0");
    NoiseSpectrum out;
    out.v_ = Tabulated{std::move(omega), std::move(s)};
    return out;
}

double NoiseSpectrum::operator()(double omega) const {
    if (!(omega > 0.0)) throw validation_error("spectrum_eval: omega must be > 0");
    return std::visit(
        [omega](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, White>) {
                return omega <= m.omega_max ? m.s0 : 0.0;
            } else if constexpr (std::is_same_v<T, PowerLaw>) {
                if (omega < m.omega_min || omega > m.omega_max) return 0.0;
                return m.amplitude * std::pow(omega, -m.exponent);
            } else if constexpr (std::is_same_v<T, Lorentzian>) {
                return 2.0 * m.sigma2 * m.gamma_c / (m.gamma_c * m.gamma_c + omega * omega);
            } else if constexpr (std::is_same_v<T, LogLogSpline>) {
                if (omega > m.omega_cutoff) return 0.0;
                const double lw = std::log(omega);
                if (lw <= m.log_omega.front()) return std::exp(m.log_s.front());
                if (lw >= m.log_omega.back()) {
                    const double slope = m.spline.derivative(m.log_omega.back());
                    return std::exp(m.log_s.back() + slope * (lw - m.log_omega.back()));
                }
                return std::exp(m.spline(lw));
            } else {  // Tabulated
                if (omega <= m.omega.front()) return m.s.front();
                if (omega > m.omega.back()) return 0.0;
                const auto it = std::upper_bound(m.omega.begin(), m.omega.end(), omega);
                const std::size_t i = static_cast<std::size_t>(it - m.omega.begin()) - 1;
                const double f = (omega - m.omega[i]) / (m.omega[i + 1] - m.omega[i]);
                return m.s[i] + f * (m.s[i + 1] - m.s[i]);
            }
        },
        v_);
}

std::string NoiseSpectrum::variant_name() const {
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, White>) return "white";
            else if constexpr (std::is_same_v<T, PowerLaw>) return "power_law";
            else if constexpr (std::is_same_v<T, Lorentzian>) return "lorentzian";
            else if constexpr (std::is_same_v<T, LogLogSpline>) return "loglog_spline";
            else return "tabulated";
        },
        v_);
}

double NoiseSpectrum::upper_cutoff() const {
    return std::visit(
        [](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, White>) return m.omega_max;
            else if constexpr (std::is_same_v<T, PowerLaw>) return m.omega_max;
            else if constexpr (std::is_same_v<T, Lorentzian>)
                return std::numeric_limits<double>::infinity();
            else if constexpr (std::is_same_v<T, LogLogSpline>) return m.omega_cutoff;
            else return m.omega.back();
        },
        v_);
}

double NoiseSpectrum::sampling_cutoff() const {
    if (const auto* lor = get_if<Lorentzian>()) return 256.0 * lor->gamma_c;
    const double up = upper_cutoff();
    if (std::isfinite(up)) return up;
    // spline with infinite cutoff: resolve a few decades past the last knot
    if (const auto* sp = get_if<LogLogSpline>()) return 100.0 * std::exp(sp->log_omega.back());
    return up;
}

std::vector<double> NoiseSpectrum::breakpoints() const {
    return std::visit(
        [](const auto& m) -> std::vector<double> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, White>) {
                if (std::isfinite(m.omega_max)) return {m.omega_max};
                return {};
            } else if constexpr (std::is_same_v<T, PowerLaw>) {
                return {m.omega_min, m.omega_max};
            } else if constexpr (std::is_same_v<T, Lorentzian>) {
                return {m.gamma_c};
            } else if constexpr (std::is_same_v<T, LogLogSpline>) {
                std::vector<double> b;
                for (double lw : m.log_omega) b.push_back(std::exp(lw));
                if (std::isfinite(m.omega_cutoff)) b.push_back(m.omega_cutoff);
                return b;
            } else {
                return {m.omega.front(), m.omega.back()};
            }
        },
        v_);
}

NoiseTrajectory synthesize_trajectory(const NoiseSpectrum& spectrum, double dt,
                                      double duration, std::uint64_t seed,
                                      const SynthesisOptions& opts) {
    if (!(dt > 0.0)) throw validation_error("synthesize_trajectory: dt must be > 0");
    if (!(duration >= dt))
        throw validation_error("synthesize_trajectory: duration must be >= dt");
    const double nyq = kPi / dt;
    const double required = spectrum.sampling_cutoff();
    if (std::isfinite(required) && nyq < required * (1.0 - 1e-12))
        throw validation_error("synthesize_trajectory: dt too coarse for the spectrum band");

    std::size_t n = 1;
    while (static_cast<double>(n) < opts.extension_factor * duration / dt) n <<= 1;
    const std::size_t half = n / 2;
    if (half < 16)
        throw validation_error("synthesize_trajectory: under-resolved grid (fewer than 16 harmonics)");

    const double domega = 2.0 * kPi / (static_cast<double>(n) * dt);
    std::mt19937_64 rng(seed);
    std::vector<std::complex<double>> bins(n, {0.0, 0.0});
    for (std::size_t k = 1; k <= half; ++k) {
        const double theta = 2.0 * kPi * canonical(rng);
        const double wk = static_cast<double>(k) * domega;
        const double s = spectrum(wk);
        if (s > 0.0) {
            const double amp = std::sqrt(2.0 * s * domega / kPi);
            bins[k] = std::polar(amp, theta);
        }
    }
    fft_inplace(bins, /*inverse=*/true);

    NoiseTrajectory traj;
    traj.dt = dt;
    traj.seed = seed;
    const auto count = static_cast<std::size_t>(std::floor(duration / dt)) + 1;
    traj.samples.resize(std::min(count, n));
    double sumsq = 0.0;
    for (std::size_t m = 0; m < traj.samples.size(); ++m) {
        traj.samples[m] = bins[m].real();
        sumsq += traj.samples[m] * traj.samples[m];
    }
    const double rms = std::sqrt(sumsq / static_cast<double>(traj.samples.size()));
    traj.rms_warning = rms > opts.rms_warning_cap;
    return traj;
}

NoiseSpectrum estimate_psd(const NoiseTrajectory& trajectory, const WelchOptions& opts) {
    const std::size_t m = trajectory.samples.size();
    if (m < 1024) throw validation_error("estimate_psd: need >= 1024 samples");
    if (!(trajectory.dt > 0.0)) throw validation_error("estimate_psd: dt must be > 0");

    // segment length: power of two giving roughly the requested count at 50% overlap
    std::size_t seg_len = 1;
    const double ideal = 2.0 * static_cast<double>(m) /
                         (static_cast<double>(opts.target_segments) + 1.0);
    while (seg_len * 2 <= static_cast<std::size_t>(ideal)) seg_len <<= 1;
    seg_len = std::max(seg_len, opts.min_segment_length);
    seg_len = std::min(seg_len, m);

    const std::size_t hop = seg_len / 2;
    const std::size_t n_seg = (m - seg_len) / hop + 1;

    std::vector<double> window(seg_len);
    double win_power = 0.0;
    for (std::size_t i = 0; i < seg_len; ++i) {
        window[i] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) /
                                          static_cast<double>(seg_len - 1)));
        win_power += window[i] * window[i];
    }
    win_power /= static_cast<double>(seg_len);

    std::vector<double> psd(seg_len / 2, 0.0);
    std::vector<std::complex<double>> buf(seg_len);
    for (std::size_t s = 0; s < n_seg; ++s) {
        const std::size_t off = s * hop;
        for (std::size_t i = 0; i < seg_len; ++i)
            buf[i] = {trajectory.samples[off + i] * window[i], 0.0};
        fft_inplace(buf, /*inverse=*/false);
        for (std::size_t k = 1; k <= seg_len / 2; ++k)
            psd[k - 1] += std::norm(buf[k]);
    }

    // |X_k|^2 * dt / (L U), averaged over segments, matches the autocovariance
    // convention (1/pi) Int S dw = variance (factor 2 one-sided, then S = S_f/2).
    const double scale = trajectory.dt /
                         (static_cast<double>(seg_len) * win_power * static_cast<double>(n_seg));
    std::vector<double> omega(seg_len / 2);
    for (std::size_t k = 1; k <= seg_len / 2; ++k) {
        omega[k - 1] = 2.0 * kPi * static_cast<double>(k) /
                       (static_cast<double>(seg_len) * trajectory.dt);
        psd[k - 1] *= scale;
    }
    return NoiseSpectrum::tabulated(std::move(omega), std::move(psd));
}

}  // namespace dd
