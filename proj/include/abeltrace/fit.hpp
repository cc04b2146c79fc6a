#ifndef ABELTRACE_FIT_HPP
#define ABELTRACE_FIT_HPP

#include "abeltrace/multipoly.hpp"

#include <utility>
#include <vector>

namespace abeltrace {

/// Elementary symmetric values e_1..e_N from power sums s_1..s_N via the
/// Newton recursion l·e_l = sum_{i=1..l} (-1)^{i-1} e_{l-i} s_i.
/// Y^N - e_1 Y^{N-1} + ... + (-1)^N e_N then has the original values as roots.
CVec newton_to_elementary(const CVec& power_sums);

struct FitResult {
    MultiPoly poly;
    double residual; // max |poly(sample) - value| over the samples
};

using FitSample = std::pair<CVec, cplx>;

/// Least-squares polynomial fit over all monomials of total degree at most
/// max_total_degree, solved by column-pivoted orthogonal factorization.
/// Throws FitError(RankDeficient) when the sample design does not determine
/// the coefficients.
FitResult fit_poly(const std::vector<FitSample>& samples, int max_total_degree);

} // namespace abeltrace

#endif
