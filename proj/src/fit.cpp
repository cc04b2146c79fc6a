#include "abeltrace/fit.hpp"
#include "abeltrace/errors.hpp"

#include <Eigen/Dense>

namespace abeltrace {

CVec newton_to_elementary(const CVec& power_sums) {
    const int n = static_cast<int>(power_sums.size());
    if (n < 1) throw ShapeError("newton_to_elementary", "need at least one power sum");
    CVec e(n + 1);
    e[0] = cplx(1.0);
    for (int l = 1; l <= n; ++l) {
        cplx acc(0.0);
        double sign = 1.0;
        for (int i = 1; i <= l; ++i) {
            acc += sign * e[l - i] * power_sums[i - 1];
            sign = -sign;
        }
        e[l] = acc / static_cast<double>(l);
    }
    return CVec(e.begin() + 1, e.end());
}

namespace {

void collect_monomials(int num_vars, int max_total, int pos, int remaining, ExpVec& cur,
                       std::vector<ExpVec>& out) {
    if (pos == num_vars) {
        out.push_back(cur);
        return;
    }
    for (int d = 0; d <= remaining; ++d) {
        cur[pos] = d;
        collect_monomials(num_vars, max_total, pos + 1, remaining - d, cur, out);
    }
    cur[pos] = 0;
}

} // namespace

FitResult fit_poly(const std::vector<FitSample>& samples, int max_total_degree) {
    if (samples.empty()) throw ShapeError("fit_poly", "no samples");
    if (max_total_degree < 0) throw ShapeError("fit_poly", "negative degree bound");
    const int m = static_cast<int>(samples.front().first.size());
    for (const auto& [pt, val] : samples) {
        (void)val;
        if (static_cast<int>(pt.size()) != m)
            throw ShapeError("fit_poly", "inconsistent parameter dimensions");
    }

    std::vector<ExpVec> basis;
    ExpVec cur(m, 0);
    collect_monomials(m, max_total_degree, 0, max_total_degree, cur, basis);
    const int rows = static_cast<int>(samples.size());
    const int cols = static_cast<int>(basis.size());
    if (rows < cols)
        throw FitError(FitError::Kind::RankDeficient, "fit_poly",
                       "fewer samples than monomials");

    Eigen::MatrixXcd A(rows, cols);
    Eigen::VectorXcd y(rows);
    for (int r = 0; r < rows; ++r) {
        const CVec& pt = samples[r].first;
        for (int c = 0; c < cols; ++c) {
            cplx v(1.0);
            for (int j = 0; j < m; ++j) {
                for (int k = 0; k < basis[c][j]; ++k) v *= pt[j];
            }
            A(r, c) = v;
        }
        y(r) = samples[r].second;
    }

    const auto qr = A.colPivHouseholderQr();
    if (qr.rank() < cols)
        throw FitError(FitError::Kind::RankDeficient, "fit_poly",
                       "sample design does not determine the coefficients");
    const Eigen::VectorXcd coeffs = qr.solve(y);

    MultiPoly::TermMap terms;
    for (int c = 0; c < cols; ++c) {
        if (coeffs(c) != cplx(0.0)) terms[basis[c]] = coeffs(c);
    }
    MultiPoly poly(m, std::move(terms));

    const Eigen::VectorXcd err = A * coeffs - y;
    double residual = 0.0;
    for (int r = 0; r < rows; ++r) residual = std::max(residual, std::abs(err(r)));
    return FitResult{std::move(poly), residual};
}

} // namespace abeltrace
