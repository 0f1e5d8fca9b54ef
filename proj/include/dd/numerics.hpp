#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dd/errors.hpp"

namespace dd {

// Neumaier-compensated accumulator for alternating sums.
class CompensatedSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// In-place LU solve with partial pivoting for small dense systems.
// a is row-major n*n, b length n; solution overwrites b.
// Throws numerical_error if a pivot falls below pivot_tol * max|row|.
void solve_dense(std::vector<double>& a, std::vector<double>& b, std::size_t n,
                 double pivot_tol = 1e-13);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_err = 0.0;
    double intercept_err = 0.0;
};

// Weighted least-squares straight line y = slope*x + intercept.
// Weights are 1/sigma^2; pass all-ones for an unweighted fit.
LinearFit weighted_linear_fit(std::span<const double> x, std::span<const double> y,
                              std::span<const double> w);

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

// One 15-point Gauss-Kronrod panel on [a,b]; error from the embedded 7-point rule.
QuadratureResult gk15_panel(const std::function<double(double)>& f, double a, double b);

// Adaptive bisection of GK15 panels until the summed error estimate meets
// rel_tol*|I| + abs_tol. Throws numerical_error (carrying the estimate) on
// depth exhaustion.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double rel_tol = 1e-10,
                                    double abs_tol = 0.0, int max_depth = 28);

// Same adaptive subdivision, but records the final leaf panels as explicit
// (node, weight) pairs so the quadrature can be re-applied to a different
// integrand on the same geometry.
struct QuadraturePlan {
    std::vector<double> nodes;
    std::vector<double> weights;

    double apply(const std::function<double(double)>& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

QuadratureResult integrate_adaptive_plan(const std::function<double(double)>& f, double a,
                                         double b, QuadraturePlan& plan,
                                         double rel_tol = 1e-10, double abs_tol = 0.0,
                                         int max_depth = 28);

// Natural cubic spline through strictly increasing abscissae (>= 2 points;
// 2 points degrade to a straight line). Out-of-range evaluation extrapolates
// the boundary cubic; callers wanting different tails clamp themselves.
class CubicSpline {
  public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> xs, std::vector<double> ys);

    double operator()(double x) const;
    double derivative(double x) const;
    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }

  private:
    std::vector<double> xs_, ys_, y2_;
    std::size_t segment(double x) const;
};

struct NelderMeadOptions {
    std::size_t max_iterations = 4000;
    double f_tol = 1e-12;   // absolute spread of simplex values
    double x_tol = 1e-10;   // simplex diameter
};

struct NelderMeadResult {
    std::vector<double> x;
    double fmin = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

// Derivative-free simplex minimizer. The initial simplex is x0 plus
// per-coordinate steps; fully deterministic.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0, std::span<const double> steps,
                             const NelderMeadOptions& opts = {});

}  // namespace dd
