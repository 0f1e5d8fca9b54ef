#pragma once

#include <span>
#include <vector>

#include "dd/noise.hpp"
#include "dd/numerics.hpp"
#include "dd/sequences.hpp"

namespace dd {

// Dimensionless filter sample: value = F(x) at x = omega*tau.
struct FilterEvaluation {
    double x = 0.0;
    double value = 0.0;
};

// Filter function of a sign-alternating segment pattern, written as
// F(x) = |sum_k c_k e^{i x t_k}|^2 over the segment endpoints.  A small-x
// series over the endpoint moments keeps the deep polynomial cancellations
// exact where the direct complex sum would drown in rounding; the direct sum
// takes over for x >= 1.
class SegmentFilter {
  public:
    // window_fraction = pulse_duration / tau; each pulse blanks
    // [alpha_i - w/2, alpha_i + w/2] in normalized time.  Throws
    // validation_error when pulse windows overlap or poke outside (0,1).
    explicit SegmentFilter(std::span<const double> alphas, double window_fraction = 0.0);

    double value(double x) const;          // F(x), >= 0, F(0) = 0
    double value_over_x2(double x) const;  // F(x)/x^2, finite at x = 0

    // Large-x average of F: sum of squared endpoint coefficients.
    double mean_value() const { return mean_; }

    // Pair sums entering the asymptotic tail of Int g(w) F(w tau) dw:
    //   sum_{a<b} 2 c_a c_b sin(x d_ab)/d_ab   and
    //   sum_{a<b} 2 c_a c_b cos(x d_ab)/d_ab^2, with d_ab = t_a - t_b.
    double pair_sin_sum(double x) const;
    double pair_cos_sum2(double x) const;
    // sum_{a<b} 2 |c_a c_b| / |d_ab|^3, bounding the next asymptotic order.
    double pair_abs_sum3() const { return d3_; }

    int endpoint_count() const { return static_cast<int>(t_.size()); }

  private:
    std::vector<double> t_;        // endpoint times in [0,1]
    std::vector<double> c_;        // endpoint coefficients
    std::vector<double> moments_;  // cleaned sum_k c_k t_k^m, m = 0..m_max
    double mean_ = 0.0;
    double d3_ = 0.0;
};

// F(omega tau) for instantaneous pulses; alphas may be empty (free evolution).
double filter_function(std::span<const double> alphas, double x);

// Finite-duration variant: the qubit is insensitive during each pulse window.
// Reduces exactly to filter_function when sequence.pulse_duration_s == 0.
double filter_function_finite(const PulseSequence& sequence, double x);

struct ChiOptions {
    double rel_tol = 1e-6;
    std::size_t max_chunks = 200000;  // hard cap on oscillatory panels
};

// Weighted spectral overlap chi = Int_0^inf S(w) F(w tau) / (2 pi w^2) dw.
// Oscillatory lobes are integrated panel-by-panel (split at spectrum
// breakpoints); the far tail is replaced by the mean-filter integral plus
// first- and second-order stationary boundary corrections, and is truncated
// where its running contribution falls below 1e-12 of the accumulated value.
double chi(const PulseSequence& sequence, double tau, const NoiseSpectrum& spectrum,
           const ChiOptions& opts = {});

// Frozen quadrature geometry for one (sequence, tau): chi(S) = sum w_q S(w_q)
// for any spectrum evaluated on the same nodes.  Exactly linear in S.
struct ChiPlan {
    std::vector<double> omegas;
    std::vector<double> weights;

    double apply(const NoiseSpectrum& s) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < omegas.size(); ++i) acc += weights[i] * s(omegas[i]);
        return acc;
    }
};

// Builds the node set by running the chi algorithm against a reference
// spectrum (which fixes the adaptive geometry and truncation point).
ChiPlan build_chi_plan(const PulseSequence& sequence, double tau,
                       const NoiseSpectrum& reference, const ChiOptions& opts = {});

// Coherence prediction C(tau) = N exp(-chi(tau)).
struct CoherenceModel {
    double normalization = 1.0;  // N in (0,1]
    PulseSequence sequence;
    NoiseSpectrum spectrum;

    CoherenceModel(double n, PulseSequence seq, NoiseSpectrum spec);
};

double coherence(const CoherenceModel& model, double tau, const ChiOptions& opts = {});

struct CoherenceTimeOptions {
    double tau_init = 1e-3;   // bracket expansion start, seconds
    double tau_min = 1e-9;
    double tau_max = 1e4;
    double rel_tol = 1e-4;
    ChiOptions chi;
};

// Solves chi(tau_c) = 1, i.e. C = N/e: geometric bracket expansion then
// bisection.  Throws numerical_error when no bracket exists in range.
double coherence_time(const CoherenceModel& model, const CoherenceTimeOptions& opts = {});

}  // namespace dd
