#include "dd/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>

namespace dd {

void solve_dense(std::vector<double>& a, std::vector<double>& b, std::size_t n,
                 double pivot_tol) {
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) throw numerical_error("solve_dense: zero matrix");

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (std::abs(a[piv * n + col]) < pivot_tol * scale)
            throw numerical_error("solve_dense: singular or near-singular matrix");
        if (piv != col) {
            for (std::size_t c = col; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
            std::swap(b[piv], b[col]);
        }
        const double d = a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = a[r * n + col] / d;
            if (m == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= m * a[col * n + c];
            b[r] -= m * b[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= a[i * n + c] * b[c];
        b[i] = acc / a[i * n + i];
    }
}

LinearFit weighted_linear_fit(std::span<const double> x, std::span<const double> y,
                              std::span<const double> w) {
    if (x.size() != y.size() || x.size() != w.size() || x.size() < 2)
        throw validation_error("weighted_linear_fit: need >= 2 matching samples");
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        swx += w[i] * x[i];
        swy += w[i] * y[i];
        swxx += w[i] * x[i] * x[i];
        swxy += w[i] * x[i] * y[i];
    }
    const double det = sw * swxx - swx * swx;
    if (det <= 0.0 || sw <= 0.0)
        throw numerical_error("weighted_linear_fit: degenerate abscissae");
    LinearFit fit;
    fit.slope = (sw * swxy - swx * swy) / det;
    fit.intercept = (swxx * swy - swx * swxy) / det;
    fit.slope_err = std::sqrt(sw / det);
    fit.intercept_err = std::sqrt(swxx / det);

    const double ybar = swy / sw;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += w[i] * r * r;
        ss_tot += w[i] * (y[i] - ybar) * (y[i] - ybar);
    }
    fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK values).
constexpr std::array<double, 8> kGkNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrodW = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussW = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace

QuadratureResult gk15_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double kron = kKronrodW[7] * fc;
    double gauss = kGaussW[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kGkNodes[i];
        const double fsum = f(c - dx) + f(c + dx);
        kron += kKronrodW[i] * fsum;
        if (i % 2 == 1) gauss += kGaussW[i / 2] * fsum;
    }
    QuadratureResult r;
    r.value = kron * h;
    r.error = std::abs((kron - gauss) * h);
    r.evaluations = 15;
    return r;
}

namespace {

struct Panel {
    double a, b;
    QuadratureResult q;
};

QuadratureResult integrate_impl(const std::function<double(double)>& f, double a, double b,
                                double rel_tol, double abs_tol, int max_depth,
                                QuadraturePlan* plan) {
    if (!(b > a)) return {};
    std::deque<Panel> panels{{a, b, gk15_panel(f, a, b)}};
    std::size_t evals = 15;
    for (int depth = 0; depth < max_depth; ++depth) {
        double total = 0, err = 0;
        for (const Panel& p : panels) {
            total += p.q.value;
            err += p.q.error;
        }
        const double target = std::max(abs_tol, rel_tol * std::abs(total));
        if (err <= target || target == 0.0) break;
        // split the panels carrying the bulk of the error estimate
        std::deque<Panel> next;
        const double split_level = 0.5 * target / static_cast<double>(panels.size());
        bool split_any = false;
        for (const Panel& p : panels) {
            if (p.q.error > split_level && p.b - p.a > 1e-15 * (b - a)) {
                const double m = 0.5 * (p.a + p.b);
                next.push_back({p.a, m, gk15_panel(f, p.a, m)});
                next.push_back({m, p.b, gk15_panel(f, m, p.b)});
                evals += 30;
                split_any = true;
            } else {
                next.push_back(p);
            }
        }
        panels.swap(next);
        if (!split_any) break;
        if (depth == max_depth - 1) {
            double t2 = 0, e2 = 0;
            for (const Panel& p : panels) {
                t2 += p.q.value;
                e2 += p.q.error;
            }
            if (e2 > std::max(abs_tol, rel_tol * std::abs(t2)))
                throw numerical_error("integrate_adaptive: tolerance not met, error estimate " +
                                      std::to_string(e2));
        }
    }
    QuadratureResult out;
    for (const Panel& p : panels) {
        out.value += p.q.value;
        out.error += p.q.error;
    }
    out.evaluations = evals;
    if (plan) {
        for (const Panel& p : panels) {
            const double c = 0.5 * (p.a + p.b);
            const double h = 0.5 * (p.b - p.a);
            plan->nodes.push_back(c);
            plan->weights.push_back(kKronrodW[7] * h);
            for (int i = 0; i < 7; ++i) {
                const double dx = h * kGkNodes[i];
                plan->nodes.push_back(c - dx);
                plan->weights.push_back(kKronrodW[i] * h);
                plan->nodes.push_back(c + dx);
                plan->weights.push_back(kKronrodW[i] * h);
            }
        }
    }
    return out;
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double rel_tol, double abs_tol,
                                    int max_depth) {
    return integrate_impl(f, a, b, rel_tol, abs_tol, max_depth, nullptr);
}

QuadratureResult integrate_adaptive_plan(const std::function<double(double)>& f, double a,
                                         double b, QuadraturePlan& plan, double rel_tol,
                                         double abs_tol, int max_depth) {
    return integrate_impl(f, a, b, rel_tol, abs_tol, max_depth, &plan);
}

CubicSpline::CubicSpline(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    const std::size_t n = xs_.size();
    if (n < 2 || ys_.size() != n)
        throw validation_error("CubicSpline: need >= 2 matching knots");
    for (std::size_t i = 1; i < n; ++i)
        if (!(xs_[i] > xs_[i - 1]))
            throw validation_error("CubicSpline: knots must be strictly increasing");
    y2_.assign(n, 0.0);
    if (n == 2) return;
    // Thomas algorithm on the tridiagonal system for second derivatives,
    // natural boundary (y'' = 0 at both ends).
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double sig = (xs_[i] - xs_[i - 1]) / (xs_[i + 1] - xs_[i - 1]);
        const double p = sig * y2_[i - 1] + 2.0;
        y2_[i] = (sig - 1.0) / p;
        const double d = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]) -
                         (ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1]);
        u[i] = (6.0 * d / (xs_[i + 1] - xs_[i - 1]) - sig * u[i - 1]) / p;
    }
    y2_[n - 1] = 0.0;
    for (std::size_t i = n - 1; i-- > 0;) y2_[i] = y2_[i] * y2_[i + 1] + u[i];
}

std::size_t CubicSpline::segment(double x) const {
    std::size_t lo = 0, hi = xs_.size() - 1;
    if (x <= xs_.front()) return 0;
    if (x >= xs_.back()) return xs_.size() - 2;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (xs_[mid] <= x ? lo : hi) = mid;
    }
    return lo;
}

double CubicSpline::operator()(double x) const {
    const std::size_t i = segment(x);
    const double h = xs_[i + 1] - xs_[i];
    const double a = (xs_[i + 1] - x) / h;
    const double b = (x - xs_[i]) / h;
    return a * ys_[i] + b * ys_[i + 1] +
           ((a * a * a - a) * y2_[i] + (b * b * b - b) * y2_[i + 1]) * (h * h) / 6.0;
}

double CubicSpline::derivative(double x) const {
    const std::size_t i = segment(x);
    const double h = xs_[i + 1] - xs_[i];
    const double a = (xs_[i + 1] - x) / h;
    const double b = (x - xs_[i]) / h;
    return (ys_[i + 1] - ys_[i]) / h +
           ((3.0 * b * b - 1.0) * y2_[i + 1] - (3.0 * a * a - 1.0) * y2_[i]) * h / 6.0;
}

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0, std::span<const double> steps,
                             const NelderMeadOptions& opts) {
    const std::size_t n = x0.size();
    if (n == 0 || steps.size() != n)
        throw validation_error("nelder_mead: empty start or mismatched steps");

    std::vector<std::vector<double>> simplex(n + 1, std::vector<double>(x0.begin(), x0.end()));
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += steps[i];
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

    auto order = [&] {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> s2(n + 1);
        std::vector<double> f2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            s2[i] = simplex[idx[i]];
            f2[i] = fv[idx[i]];
        }
        simplex.swap(s2);
        fv.swap(f2);
    };
    order();

    NelderMeadResult res;
    std::vector<double> centroid(n), trial(n), trial2(n);
    std::size_t it = 0;
    for (; it < opts.max_iterations; ++it) {
        double spread = fv[n] - fv[0];
        double diam = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            diam = std::max(diam, std::abs(simplex[n][i] - simplex[0][i]));
        if (spread <= opts.f_tol && diam <= opts.x_tol) {
            res.converged = true;
            break;
        }
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0;
            for (std::size_t k = 0; k < n; ++k) c += simplex[k][i];
            centroid[i] = c / static_cast<double>(n);
        }
        // reflect
        for (std::size_t i = 0; i < n; ++i) trial[i] = centroid[i] + (centroid[i] - simplex[n][i]);
        double ft = f(trial);
        if (ft < fv[0]) {
            // expand
            for (std::size_t i = 0; i < n; ++i)
                trial2[i] = centroid[i] + 2.0 * (centroid[i] - simplex[n][i]);
            double fe = f(trial2);
            if (fe < ft) {
                simplex[n] = trial2;
                fv[n] = fe;
            } else {
                simplex[n] = trial;
                fv[n] = ft;
            }
        } else if (ft < fv[n - 1]) {
            simplex[n] = trial;
            fv[n] = ft;
        } else {
            // contract (outside if reflection helped at all, else inside)
            const bool outside = ft < fv[n];
            const double sign = outside ? 0.5 : -0.5;
            for (std::size_t i = 0; i < n; ++i)
                trial2[i] = centroid[i] + sign * (centroid[i] - simplex[n][i]);
            double fc = f(trial2);
            if (fc < std::min(ft, fv[n])) {
                simplex[n] = trial2;
                fv[n] = fc;
            } else {
                // shrink toward the best vertex
                for (std::size_t k = 1; k <= n; ++k) {
                    for (std::size_t i = 0; i < n; ++i)
                        simplex[k][i] = simplex[0][i] + 0.5 * (simplex[k][i] - simplex[0][i]);
                    fv[k] = f(simplex[k]);
                }
            }
        }
        order();
    }
    res.x = simplex[0];
    res.fmin = fv[0];
    res.iterations = it;
    return res;
}

}  // namespace dd
