#pragma once

#include <cmath>
#include <utility>

namespace ktwin {

// Kahan-compensated accumulator for long sums of nearly equal terms.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

namespace detail {

inline double simpson_step(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_rec(F& f, double a, double m, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = simpson_step(a, m, fa, flm, fm);
    double right = simpson_step(m, b, fm, frm, fb);
    double err = (left + right - whole) / 15.0;
    if (std::fabs(err) <= tol || depth <= 0) return left + right + err;
    return adaptive_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson with Richardson correction, absolute tolerance.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol, int max_depth = 60) {
    if (!(b > a)) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a);
    double fm = f(m);
    double fb = f(b);
    double whole = detail::simpson_step(a, b, fa, fm, fb);
    return detail::adaptive_rec(f, a, m, b, fa, fm, fb, whole, abs_tol, max_depth);
}

}  // namespace ktwin
