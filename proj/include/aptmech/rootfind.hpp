// rootfind.hpp — plain bisection on a sign change.

#pragma once

#include <cmath>
#include <stdexcept>

namespace aptmech {

// Bisects f over [lo, hi] until the bracket width falls below
// rel_tol·max(|lo|, |hi|) or max_iter halvings.  f(lo) and f(hi) must have
// opposite signs (a zero endpoint is returned directly).
template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol = 1e-15,
              int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("bisect: no sign change over bracket");
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace aptmech
