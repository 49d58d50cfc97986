#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace pnsqkd {

// Largest x in [lo, hi] with pred(x) true, assuming pred is true then false.
inline double bisect_boundary(const std::function<bool(double)>& pred, double lo, double hi,
                              double tol = 1e-6) {
    if (!pred(lo)) return lo;
    if (pred(hi)) return hi;
    while (hi - lo > tol * 0.5) {
        const double mid = 0.5 * (lo + hi);
        (pred(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Root of a function that changes sign on [lo, hi].
inline double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-6) {
    const double flo = f(lo);
    if (flo == 0.0) return lo;
    if (std::signbit(flo) == std::signbit(f(hi)))
        throw std::domain_error("bisect_root: no sign change on the bracket");
    return bisect_boundary([&](double x) { return std::signbit(f(x)) == std::signbit(flo); }, lo, hi,
                           tol);
}

struct Maximum {
    double x;
    double value;
};

inline Maximum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                  double tol = 1e-9) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

}  // namespace pnsqkd
