#pragma once

#include <span>
#include <string>
#include <vector>

#include "dd/errors.hpp"

namespace dd {

// Pi-pulse timing sequence in normalized time t = time/tau, plus the physical
// parameters needed to realize it.  An empty alphas list is plain free
// evolution (Ramsey, no refocusing pulses).
struct PulseSequence {
    std::vector<double> alphas;             // pulse centers, strictly increasing in (0,1)
    double tau_s = 0.0;                     // total free-evolution window, seconds
    double pulse_duration_s = 0.0;          // pi-pulse length, seconds; 0 = instantaneous
    std::vector<double> pulse_phases_rad;   // per-pulse drive phase offset
    std::string label;

    int n() const { return static_cast<int>(alphas.size()); }

    // Throws validation_error on ordering/interior/feasibility violations.
    void validate() const;

    // Same timings at a different total duration (pulse_duration_s kept).
    PulseSequence rescaled(double new_tau_s) const;

    // Time-reversed sequence: alpha -> 1 - alpha, order reversed.
    PulseSequence mirrored() const;

    static PulseSequence ramsey(double tau_s);
    static PulseSequence udd(int n, double tau_s, double pulse_duration_s = 0.0);
    static PulseSequence cpmg(int n, double tau_s, double pulse_duration_s = 0.0);
};

// Frequency-offset drift delta(t) = sum_j coeffs[j] * t^j in normalized time,
// coefficients in rad/s.
struct DriftPolynomial {
    std::vector<double> coeffs;

    void validate() const {
        if (coeffs.empty()) throw validation_error("DriftPolynomial: empty coefficient list");
    }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Uhrig timings alpha_i = sin^2(pi i / (2(n+1))), i = 1..n.
std::vector<double> udd_times(int n);

// Equally spaced timings alpha_i = (i - 1/2)/n.
std::vector<double> cpmg_times(int n);

// Signed residual (-1)^n - 2 sum_i (-1)^i alpha_i^j of the order-j
// cancellation condition.  Zero means the sequence refocuses a pure t^(j-1)
// drift.  Compensated summation keeps the alternating sum exact to ~1e-15.
double cancellation_residual(std::span<const double> alphas, int j);

struct SolveOptions {
    int max_iterations = 200;
    double residual_tol = 1e-12;
};

// Newton iteration on the n-dimensional cancellation system, damped so every
// iterate stays strictly ordered and interior.  Throws numerical_error on
// non-convergence (message carries the final residual norm) or on a
// degenerate Jacobian.
std::vector<double> solve_polynomial_cancellation(int n, std::vector<double> initial_guess,
                                                  const SolveOptions& opts = {});

// Net phase accumulated under drift poly across the sign-alternating
// free-evolution segments, in units of tau (exact antiderivative evaluation,
// no quadrature).  Equals sum_j coeffs[j-1]/j * cancellation_residual(alphas, j).
double phase_error(std::span<const double> alphas, const DriftPolynomial& poly);

// Shared validation for bare timing lists (used by PulseSequence::validate
// and the operations that accept raw alphas).
void validate_alphas(std::span<const double> alphas);

}  // namespace dd
