#include "dd/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dd/numerics.hpp"

namespace dd {

void validate_alphas(std::span<const double> alphas) {
    double prev = 0.0;
    for (double a : alphas) {
        if (!(a > prev))
            throw validation_error("pulse times must be strictly increasing and in (0,1)");
        prev = a;
    }
    if (!alphas.empty() && !(alphas.back() < 1.0))
        throw validation_error("pulse times must be strictly below 1");
}

void PulseSequence::validate() const {
    validate_alphas(alphas);
    if (!(tau_s > 0.0)) throw validation_error("PulseSequence: tau must be positive");
    if (pulse_duration_s < 0.0)
        throw validation_error("PulseSequence: pulse duration must be >= 0");
    if (static_cast<double>(n()) * pulse_duration_s >= tau_s)
        throw validation_error("PulseSequence: pulses do not fit inside tau");
    if (pulse_phases_rad.size() != alphas.size())
        throw validation_error("PulseSequence: need one drive phase per pulse");
}

PulseSequence PulseSequence::rescaled(double new_tau_s) const {
    PulseSequence s = *this;
    s.tau_s = new_tau_s;
    return s;
}

PulseSequence PulseSequence::mirrored() const {
    PulseSequence s = *this;
    std::reverse(s.alphas.begin(), s.alphas.end());
    for (double& a : s.alphas) a = 1.0 - a;
    std::reverse(s.pulse_phases_rad.begin(), s.pulse_phases_rad.end());
    return s;
}

PulseSequence PulseSequence::ramsey(double tau_s) {
    PulseSequence s;
    s.tau_s = tau_s;
    s.label = "ramsey";
    return s;
}

PulseSequence PulseSequence::udd(int n, double tau_s, double pulse_duration_s) {
    PulseSequence s;
    s.alphas = udd_times(n);
    s.tau_s = tau_s;
    s.pulse_duration_s = pulse_duration_s;
    s.pulse_phases_rad.assign(static_cast<std::size_t>(n), 0.0);
    s.label = "udd-" + std::to_string(n);
    return s;
}

PulseSequence PulseSequence::cpmg(int n, double tau_s, double pulse_duration_s) {
    PulseSequence s;
    s.alphas = cpmg_times(n);
    s.tau_s = tau_s;
    s.pulse_duration_s = pulse_duration_s;
    s.pulse_phases_rad.assign(static_cast<std::size_t>(n), 0.0);
    s.label = "cpmg-" + std::to_string(n);
    return s;
}

std::vector<double> udd_times(int n) {
    if (n < 1) throw validation_error("udd_times: n must be >= 1 (use an empty sequence for n=0)");
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const double s = std::sin(std::numbers::pi * i / (2.0 * (n + 1)));
        a[static_cast<std::size_t>(i - 1)] = s * s;
    }
    return a;
}

std::vector<double> cpmg_times(int n) {
    if (n < 1) throw validation_error("cpmg_times: n must be >= 1 (use an empty sequence for n=0)");
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) a[static_cast<std::size_t>(i - 1)] = (i - 0.5) / n;
    return a;
}

double cancellation_residual(std::span<const double> alphas, int j) {
    validate_alphas(alphas);
    if (j < 1) throw validation_error("cancellation_residual: j must be >= 1");
    const int n = static_cast<int>(alphas.size());
    CompensatedSum acc;
    acc.add((n % 2 == 0) ? 1.0 : -1.0);
    double sign = -1.0;  // (-1)^i starting at i = 1
    for (double a : alphas) {
        acc.add(-2.0 * sign * std::pow(a, j));
        sign = -sign;
    }
    return acc.value();
}

std::vector<double> solve_polynomial_cancellation(int n, std::vector<double> guess,
                                                  const SolveOptions& opts) {
    if (n < 1) throw validation_error("solve_polynomial_cancellation: n must be >= 1");
    if (static_cast<int>(guess.size()) != n)
        throw validation_error("solve_polynomial_cancellation: guess length must equal n");
    validate_alphas(guess);

    const auto nsz = static_cast<std::size_t>(n);
    auto residuals = [&](const std::vector<double>& a) {
        std::vector<double> r(nsz);
        for (int j = 1; j <= n; ++j)
            r[static_cast<std::size_t>(j - 1)] = cancellation_residual(a, j);
        return r;
    };
    auto max_abs = [](const std::vector<double>& v) {
        double m = 0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    };
    auto ordered_interior = [](const std::vector<double>& a) {
        double prev = 0.0;
        for (double x : a) {
            if (!(x > prev)) return false;
            prev = x;
        }
        return a.back() < 1.0;
    };

    std::vector<double> alpha = std::move(guess);
    std::vector<double> r = residuals(alpha);
    double rnorm = max_abs(r);

    for (int it = 0; it < opts.max_iterations; ++it) {
        if (rnorm < opts.residual_tol) return alpha;

        // J_{j,i} = d r_j / d alpha_i = -2 (-1)^i j alpha_i^(j-1)
        std::vector<double> jac(nsz * nsz);
        for (int j = 1; j <= n; ++j) {
            double sign = -1.0;
            for (int i = 1; i <= n; ++i) {
                jac[static_cast<std::size_t>(j - 1) * nsz + static_cast<std::size_t>(i - 1)] =
                    -2.0 * sign * j * std::pow(alpha[static_cast<std::size_t>(i - 1)], j - 1);
                sign = -sign;
            }
        }
        std::vector<double> step(r);
        for (double& s : step) s = -s;
        try {
            solve_dense(jac, step, nsz);
        } catch (const numerical_error&) {
            throw numerical_error(
                "solve_polynomial_cancellation: degenerate Jacobian at residual norm " +
                std::to_string(rnorm));
        }

        // Backtrack until the iterate stays admissible and the residual shrinks.
        double lambda = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt) {
            std::vector<double> trial(nsz);
            for (std::size_t i = 0; i < nsz; ++i) trial[i] = alpha[i] + lambda * step[i];
            if (ordered_interior(trial)) {
                std::vector<double> rt = residuals(trial);
                const double nt = max_abs(rt);
                if (nt < rnorm || (lambda < 1e-6 && nt < rnorm * (1.0 + 1e-12))) {
                    alpha = std::move(trial);
                    r = std::move(rt);
                    rnorm = nt;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!accepted)
            throw numerical_error(
                "solve_polynomial_cancellation: stalled, residual norm " + std::to_string(rnorm));
    }
    if (rnorm < opts.residual_tol) return alpha;
    throw numerical_error("solve_polynomial_cancellation: no convergence after " +
                          std::to_string(opts.max_iterations) + " iterations, residual norm " +
                          std::to_string(rnorm));
}

double phase_error(std::span<const double> alphas, const DriftPolynomial& poly) {
    poly.validate();
    validate_alphas(alphas);
    CompensatedSum acc;
    for (std::size_t j = 1; j <= poly.coeffs.size(); ++j)
        acc.add(poly.coeffs[j - 1] / static_cast<double>(j) *
                cancellation_residual(alphas, static_cast<int>(j)));
    return acc.value();
}

}  // namespace dd
