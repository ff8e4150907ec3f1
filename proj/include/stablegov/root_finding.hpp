#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "stablegov/errors.hpp"

namespace stablegov::math {

struct BracketOptions {
    double abs_tol = 1e-12;
    int max_iterations = 200;
};

struct RootResult {
    double root;
    double residual;  // f(root)
    int iterations;
};

/// Brent's method on [lo, hi]: bisection safeguarded by secant and inverse
/// quadratic interpolation steps. f(lo) and f(hi) must differ in sign (or
/// one of them vanish). Throws NumericalError, with the bracket state in the
/// message, when the bracket is invalid or the iteration budget runs out.
template <class Fn>
RootResult find_root_bracketed(Fn&& f, double lo, double hi, BracketOptions opts = {}) {
    double a = lo;
    double b = hi;
    double fa = f(a);
    double fb = f(b);
    if (std::isnan(fa) || std::isnan(fb) || (fa > 0.0 && fb > 0.0) || (fa < 0.0 && fb < 0.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "root not bracketed: f(" << a << ")=" << fa << ", f(" << b << ")=" << fb;
        throw NumericalError(msg.str());
    }
    if (fa == 0.0) return {a, fa, 0};
    if (fb == 0.0) return {b, fb, 0};

    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * 2.220446049250313e-16 * std::abs(b) + 0.5 * opts.abs_tol;
        const double half = 0.5 * (c - b);
        if (std::abs(half) <= tol || fb == 0.0) {
            return {b, fb, iter};
        }
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * half * q - std::abs(tol * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < (min1 < min2 ? min1 : min2)) {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (half > 0.0 ? tol : -tol);
        fb = f(b);
    }
    std::ostringstream msg;
    msg.precision(17);
    msg << "root finder did not converge in " << opts.max_iterations << " iterations: bracket ["
        << std::min(b, c) << ", " << std::max(b, c) << "], f(b)=" << fb << ", f(c)=" << fc;
    throw NumericalError(msg.str());
}

}  // namespace stablegov::math
