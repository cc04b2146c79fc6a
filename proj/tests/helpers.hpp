#ifndef ABELTRACE_TESTS_HELPERS_HPP
#define ABELTRACE_TESTS_HELPERS_HPP

#include "abeltrace/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace testutil {

using abeltrace::cplx;
using abeltrace::CVec;
using abeltrace::ExpVec;
using abeltrace::MultiPoly;

inline double dist(cplx a, cplx b) { return std::abs(a - b); }

inline MultiPoly from_terms(int nvars, const std::vector<std::pair<ExpVec, cplx>>& terms) {
    MultiPoly p(nvars);
    for (const auto& [e, c] : terms) p += MultiPoly::monomial(e, c);
    return p;
}

// Worst coefficient difference between the two polynomials after each is
// scaled to leading coefficient 1. Both scale pivots must land on the same
// monomial for this to mean anything, which holds for a recovered interpolant
// against its ground truth.
inline double poly_rel_err(const MultiPoly& a, const MultiPoly& b) {
    const MultiPoly diff = a.normalized() - b.normalized();
    double worst = 0.0;
    for (const auto& [e, c] : diff.terms()) worst = std::max(worst, std::abs(c));
    return worst;
}

// Unordered point-set distance: max over a of min over b.
inline double set_dist(const std::vector<CVec>& as, const std::vector<CVec>& bs) {
    double worst = 0.0;
    for (const CVec& a : as) {
        double best = 1e300;
        for (const CVec& b : bs) {
            double d = 0.0;
            for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
            best = std::min(best, d);
        }
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace testutil

#endif
