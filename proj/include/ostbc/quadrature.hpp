#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ostbc/errors.hpp"

namespace ostbc {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    std::size_t evaluations = 0;
};

namespace detail {

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK constants).
inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
void gk15(const F& f, double a, double b, double& kronrod, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(mid);
    double resk = gk_wk[7] * fc;
    double resg = gk_wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * gk_nodes[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        resk += gk_wk[i] * fsum;
        if (i % 2 == 1) resg += gk_wg[i / 2] * fsum;
    }
    kronrod = resk * half;
    // QUADPACK-style sharpening of the raw Gauss/Kronrod difference
    const double scaled = 200.0 * std::abs((resk - resg) * half);
    err = scaled * std::sqrt(scaled);
}

} // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b] to an absolute
/// tolerance. Splits the worst interval until the summed error estimate is
/// below abs_tol or the interval cap is hit.
template <class F>
QuadResult integrate_gk(const F& f, double a, double b, double abs_tol = 1e-10,
                        std::size_t max_intervals = 4096) {
    struct Segment {
        double a, b, value, err;
    };
    QuadResult result;
    std::vector<Segment> segs;
    double v, e;
    detail::gk15(f, a, b, v, e);
    result.evaluations = 15;
    segs.push_back({a, b, v, e});
    while (true) {
        double total = 0.0, toterr = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].value;
            toterr += segs[i].err;
            if (segs[i].err > segs[worst].err) worst = i;
        }
        if (toterr <= abs_tol) {
            result.value = total;
            result.error_estimate = toterr;
            result.converged = true;
            return result;
        }
        if (segs.size() >= max_intervals) {
            result.value = total;
            result.error_estimate = toterr;
            result.converged = false;
            return result;
        }
        const Segment s = segs[worst];
        const double mid = 0.5 * (s.a + s.b);
        Segment left{s.a, mid, 0, 0}, right{mid, s.b, 0, 0};
        detail::gk15(f, left.a, left.b, left.value, left.err);
        detail::gk15(f, right.a, right.b, right.value, right.err);
        result.evaluations += 30;
        segs[worst] = left;
        segs.push_back(right);
    }
}

/// Same as integrate_gk but throws NumericError on non-convergence.
template <class F>
double integrate_gk_strict(const F& f, double a, double b,
                           double abs_tol = 1e-10,
                           std::size_t max_intervals = 4096,
                           const char* what = "integrate_gk") {
    QuadResult r = integrate_gk(f, a, b, abs_tol, max_intervals);
    if (!r.converged)
        throw NumericError(std::string(what) + ": quadrature did not converge (" +
                           std::to_string(r.evaluations) + " evaluations, error " +
                           std::to_string(r.error_estimate) + ")");
    return r.value;
}

namespace detail {

template <class F>
double simpson_step(const F& f, double a, double fa, double b, double fb,
                    double fm, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson integration to an absolute tolerance.
template <class F>
double integrate_simpson(const F& f, double a, double b, double abs_tol = 1e-8,
                         int max_depth = 40) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, a, fa, b, fb, fm, whole, abs_tol, max_depth);
}

} // namespace ostbc
