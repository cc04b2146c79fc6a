#ifndef ABELTRACE_DETRNG_HPP
#define ABELTRACE_DETRNG_HPP

#include "abeltrace/multipoly.hpp"

#include <random>

namespace abeltrace {

/// Deterministic random source. Doubles are built from the raw 64-bit stream
/// by an explicit shift-and-scale so the draw sequence is identical on every
/// platform; no distribution objects, no libm calls.
class DetRng {
public:
    explicit DetRng(unsigned long long seed) : eng_(seed) {}

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform on the square [-r, r]^2 as a complex number.
    cplx complex_box(double r) { return {uniform(-r, r), uniform(-r, r)}; }

    /// Rejection-sampled complex number with magnitude in [rmin, rmax].
    cplx complex_annulus(double rmin, double rmax) {
        for (;;) {
            const cplx z = complex_box(rmax);
            const double m = std::abs(z);
            if (m >= rmin && m <= rmax) return z;
        }
    }

private:
    std::mt19937_64 eng_;
};

} // namespace abeltrace

#endif
