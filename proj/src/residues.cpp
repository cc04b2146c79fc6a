#include "abeltrace/residues.hpp"
#include "abeltrace/errors.hpp"
#include "abeltrace/polytope.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace abeltrace {

namespace {

constexpr double kTorusTol = 1e-8;      // a coordinate this small is "off the torus"
constexpr double kResidualTol = 1e-10;  // accepted zero quality
constexpr double kMergeTol = 1e-8;      // zeros closer than this are one zero

cplx horner(const CVec& c, cplx z) {
    cplx acc(0.0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

cplx horner_diff(const CVec& c, cplx z) {
    cplx acc(0.0);
    for (size_t i = c.size(); i-- > 1;) acc = acc * z + static_cast<double>(i) * c[i];
    return acc;
}

/// Coefficient vector of a univariate polynomial.
CVec univariate_coeffs(const MultiPoly& p) {
    CVec c(p.total_degree() + 1, cplx(0.0));
    for (const auto& [exps, coeff] : p.terms()) c[exps[0]] = coeff;
    return c;
}

/// Coefficients in variable `var` of a bivariate polynomial with the other
/// variable frozen at r.
CVec coeffs_with_other_fixed(const MultiPoly& p, int var, cplx r) {
    const int other = 1 - var;
    CVec c(p.degree_in(var) + 1, cplx(0.0));
    for (const auto& [exps, coeff] : p.terms()) {
        cplx v = coeff;
        for (int t = 0; t < exps[other]; ++t) v *= r;
        c[exps[var]] += v;
    }
    return c;
}

struct Trimmed {
    CVec coeffs; // c[0] and c[back] significant, or empty when numerically zero
    int order;   // power of the variable factored out
};

Trimmed trim(const CVec& c, double rel_tol) {
    double maxc = 0.0;
    for (const cplx& v : c) maxc = std::max(maxc, std::abs(v));
    Trimmed out{{}, 0};
    if (maxc == 0.0) return out;
    size_t lo = 0, hi = c.size();
    while (lo < hi && std::abs(c[lo]) <= rel_tol * maxc) ++lo;
    while (hi > lo && std::abs(c[hi - 1]) <= rel_tol * maxc) --hi;
    out.coeffs.assign(c.begin() + lo, c.begin() + hi);
    out.order = static_cast<int>(lo);
    return out;
}

/// Eigenvalues of the companion matrix of c (c.back() significant).
CVec companion_roots(const CVec& c) {
    const int d = static_cast<int>(c.size()) - 1;
    if (d < 1) return {};
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) M(i, i - 1) = cplx(1.0);
    for (int i = 0; i < d; ++i) M(i, d - 1) = -c[i] / c[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    CVec roots(d);
    for (int i = 0; i < d; ++i) roots[i] = es.eigenvalues()(i);
    return roots;
}

CVec polished_roots(const CVec& c) {
    CVec roots = companion_roots(c);
    for (cplx& z : roots) {
        for (int it = 0; it < 8; ++it) {
            const cplx dp = horner_diff(c, z);
            if (std::abs(dp) < 1e-14) break;
            z -= horner(c, z) / dp;
        }
    }
    return roots;
}

std::vector<CVec> merge_zeros(std::vector<CVec> zeros) {
    std::vector<CVec> out;
    for (const CVec& z : zeros) {
        bool dup = false;
        for (const CVec& w : out) {
            double dist = 0.0, size = 1.0;
            for (size_t c = 0; c < z.size(); ++c) {
                dist = std::max(dist, std::abs(z[c] - w[c]));
                size = std::max(size, std::abs(z[c]));
            }
            if (dist < kMergeTol * size) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(z);
    }
    return out;
}

std::vector<CVec> solve_univariate(const MultiPoly& f) {
    const Trimmed t = trim(univariate_coeffs(f), 1e-12);
    if (t.coeffs.size() <= 1) return {};
    std::vector<CVec> zeros;
    for (const cplx& z : polished_roots(t.coeffs)) {
        if (std::abs(z) <= kTorusTol)
            throw SolveError(SolveError::Kind::GenericityFailure, "solve_square",
                             "root collides with the coordinate axis");
        if (std::abs(horner(t.coeffs, z)) > kResidualTol * std::max(1.0, f.max_coeff()))
            throw SolveError(SolveError::Kind::GenericityFailure, "solve_square",
                             "univariate root failed to polish");
        zeros.push_back(CVec{z});
    }
    return merge_zeros(std::move(zeros));
}

/// Sylvester resultant of f1, f2 with respect to x2, evaluated numerically.
cplx sylvester_det_at(const MultiPoly& f1, const MultiPoly& f2, cplx s) {
    const CVec a = coeffs_with_other_fixed(f1, 1, s);
    const CVec b = coeffs_with_other_fixed(f2, 1, s);
    const int d1 = static_cast<int>(a.size()) - 1;
    const int d2 = static_cast<int>(b.size()) - 1;
    const int m = d1 + d2;
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(m, m);
    for (int r = 0; r < d2; ++r) {
        for (int j = 0; j <= d1; ++j) S(r, r + j) = a[d1 - j];
    }
    for (int r = 0; r < d1; ++r) {
        for (int j = 0; j <= d2; ++j) S(d2 + r, r + j) = b[d2 - j];
    }
    return S.partialPivLu().determinant();
}

/// Coefficients of the eliminant in x1, interpolated from resultant values at
/// roots of unity (exact DFT inversion).
CVec eliminant_coeffs(const MultiPoly& f1, const MultiPoly& f2) {
    const int d1 = f1.degree_in(1), d2 = f2.degree_in(1);
    const int e1 = f1.degree_in(0), e2 = f2.degree_in(0);
    const int cap = d2 * e1 + d1 * e2;
    if (cap == 0)
        throw SolveError(SolveError::Kind::GenericityFailure, "solve_square",
                         "eliminant is constant; the system is not generic");
    const int m = cap + 1;
    const double step = 2.0 * std::numbers::pi / m;
    CVec values(m);
    for (int t = 0; t < m; ++t)
        values[t] = sylvester_det_at(f1, f2, std::polar(1.0, step * t));
    CVec coeffs(m);
    for (int j = 0; j < m; ++j) {
        cplx acc(0.0);
        for (int t = 0; t < m; ++t) acc += values[t] * std::polar(1.0, -step * j * t);
        coeffs[j] = acc / static_cast<double>(m);
    }
    return coeffs;
}

std::vector<CVec> solve_bivariate(const MultiPoly& f1, const MultiPoly& f2) {
    const double scale = std::max({1.0, f1.max_coeff(), f2.max_coeff()});
    const int d1 = f1.degree_in(1), d2 = f2.degree_in(1);

    CVec elim;
    if (d1 == 0 && d2 == 0)
        throw SolveError(SolveError::Kind::GenericityFailure, "solve_square",
                         "neither equation involves the second variable");
    if (d1 == 0) {
        elim = coeffs_with_other_fixed(f1, 0, cplx(0.0));
    } else if (d2 == 0) {
        elim = coeffs_with_other_fixed(f2, 0, cplx(0.0));
    } else {
        elim = eliminant_coeffs(f1, f2);
    }

    const Trimmed t = trim(elim, 1e-10);
    if (t.coeffs.empty())
        throw SolveError(SolveError::Kind::GenericityFailure, "solve_square",
                         "eliminant vanishes identically; common component suspected");

    const MultiPoly& g = d1 > 0 ? f1 : f2;
    std::vector<MultiPoly> grads = {poly_diff(f1, 0), poly_diff(f1, 1), poly_diff(f2, 0),
                                    poly_diff(f2, 1)};
    std::vector<CVec> zeros;
    if (t.coeffs.size() > 1) {
        for (const cplx& r : polished_roots(t.coeffs)) {
            if (std::abs(r) <= kTorusTol) continue;
            const Trimmed gc = trim(coeffs_with_other_fixed(g, 1, r), 1e-10);
            if (gc.coeffs.size() <= 1) continue;
            for (const cplx& z0 : polished_roots(gc.coeffs)) {
                CVec x{r, z0};
                bool ok = false;
                for (int it = 0; it < 30; ++it) {
                    const cplx F0 = poly_eval(f1, x), F1 = poly_eval(f2, x);
                    if (std::max(std::abs(F0), std::abs(F1)) < 1e-13 * scale) {
                        ok = true;
                        break;
                    }
                    Eigen::Matrix2cd J;
                    J(0, 0) = poly_eval(grads[0], x);
                    J(0, 1) = poly_eval(grads[1], x);
                    J(1, 0) = poly_eval(grads[2], x);
                    J(1, 1) = poly_eval(grads[3], x);
                    Eigen::Vector2cd F;
                    F << F0, F1;
                    const Eigen::Vector2cd dx = J.partialPivLu().solve(-F);
                    if (!dx.allFinite()) break;
                    x[0] += dx(0);
                    x[1] += dx(1);
                }
                if (!ok) {
                    const double res = std::max(std::abs(poly_eval(f1, x)),
                                                std::abs(poly_eval(f2, x)));
                    ok = res < kResidualTol * scale;
                }
                if (!ok) continue;
                if (std::abs(x[0]) <= kTorusTol || std::abs(x[1]) <= kTorusTol) continue;
                zeros.push_back(std::move(x));
            }
        }
    }
    zeros = merge_zeros(std::move(zeros));

    const long long expected = mixed_volume({newton_polytope(f1), newton_polytope(f2)});
    if (static_cast<long long>(zeros.size()) != expected)
        throw SolveError(SolveError::Kind::GenericityFailure, "solve_square",
                         "found " + std::to_string(zeros.size()) + " torus zeros, Bernstein bound " +
                             std::to_string(expected));
    return zeros;
}

} // namespace

SquareSystem::SquareSystem(std::vector<MultiPoly> equations) : equations_(std::move(equations)) {
    const int n = static_cast<int>(equations_.size());
    if (n < 1) throw ShapeError("SquareSystem", "no equations");
    for (const MultiPoly& f : equations_) {
        if (f.num_vars() != n)
            throw ShapeError("SquareSystem", "equation count must equal the variable count");
    }
}

SquareSystem::SquareSystem(std::vector<MultiPoly> equations, std::vector<CVec> zeros)
    : SquareSystem(std::move(equations)) {
    for (const CVec& z : zeros) {
        if (static_cast<int>(z.size()) != dim())
            throw ShapeError("SquareSystem", "zero dimension mismatch");
        for (const MultiPoly& f : equations_) {
            if (std::abs(poly_eval(f, z)) > 1e-8)
                throw ValidationError(ValidationError::Kind::ValidationFailed, "SquareSystem",
                                      "supplied point is not a zero of every equation");
        }
        if (std::abs(jacobian_det(equations_, z)) <= 1e-10)
            throw ValidationError(ValidationError::Kind::ValidationFailed, "SquareSystem",
                                  "supplied zero is not simple");
    }
    zeros_ = std::move(zeros);
}

const std::vector<CVec>& SquareSystem::zeros() const {
    if (!zeros_) throw ShapeError("SquareSystem", "no zero list supplied");
    return *zeros_;
}

cplx jacobian_det(const std::vector<MultiPoly>& equations, const CVec& point) {
    const int n = static_cast<int>(equations.size());
    Eigen::MatrixXcd J(n, n);
    for (int r = 0; r < n; ++r) {
        for (int j = 0; j < n; ++j) J(r, j) = poly_eval(poly_diff(equations[r], j), point);
    }
    return J.partialPivLu().determinant();
}

std::vector<CVec> solve_square(const SquareSystem& sys) {
    if (sys.has_zeros()) return sys.zeros();
    if (sys.dim() == 1) return solve_univariate(sys.equations()[0]);
    if (sys.dim() == 2) return solve_bivariate(sys.equations()[0], sys.equations()[1]);
    throw SolveError(SolveError::Kind::UnsupportedDimension, "solve_square",
                     "built-in elimination covers n <= 2; supply zeros for larger systems");
}

cplx residue_sum(const MultiPoly& h, const SquareSystem& sys, bool toric_form) {
    if (h.num_vars() != sys.dim())
        throw ShapeError("residue_sum", "numerator variable count mismatch");
    const std::vector<CVec> zeros = sys.has_zeros() ? sys.zeros() : solve_square(sys);
    cplx acc(0.0);
    for (const CVec& z : zeros) {
        const cplx J = jacobian_det(sys.equations(), z);
        if (std::abs(J) <= 1e-12)
            throw SolveError(SolveError::Kind::ZeroJacobian, "residue_sum",
                             "Jacobian determinant vanishes at a zero");
        cplx term = poly_eval(h, z) / J;
        if (toric_form) {
            for (const cplx& c : z) {
                if (std::abs(c) <= kTorusTol)
                    throw SolveError(SolveError::Kind::VanishingCoordinate, "residue_sum",
                                     "toric form needs zeros with nonvanishing coordinates");
                term /= c;
            }
        }
        acc += term;
    }
    return acc;
}

bool khovanskii_predict(const MultiPoly& h, const std::vector<MultiPoly>& fs) {
    const int n = h.num_vars();
    if (static_cast<int>(fs.size()) != n)
        throw ShapeError("khovanskii_predict", "need one equation per variable");
    for (const MultiPoly& f : fs) {
        if (f.num_vars() != n) throw ShapeError("khovanskii_predict", "variable count mismatch");
    }
    LatticePolytope sum = newton_polytope(fs[0]);
    for (size_t i = 1; i < fs.size(); ++i) sum = minkowski_sum(sum, newton_polytope(fs[i]));
    return strict_interior_contains(sum, newton_polytope(h));
}

double trace_derivative_check(const TraceProblem& prob, const MultiPoly& f_interp, int coord_i,
                              int k, int l, const ParamPoint& a) {
    const int n = prob.ambient_dim();
    if (f_interp.num_vars() != n)
        throw ShapeError("trace_derivative_check", "interpolant variable count mismatch");
    if (coord_i < 0 || coord_i >= n)
        throw ShapeError("trace_derivative_check", "coordinate index out of range");
    if (k < 0 || k >= n - 1)
        throw ShapeError("trace_derivative_check", "curve equation index out of range");
    if (l != 1 && l != 2)
        throw ShapeError("trace_derivative_check", "derivative order must be 1 or 2");
    prob.family().validate_params(a);

    // System rows: the interpolant, then the curve sections P_k - a_{k0}.
    std::vector<MultiPoly> eqs;
    eqs.push_back(f_interp);
    for (int r = 0; r < n - 1; ++r) eqs.push_back(prob.family().curve_section(r, a));

    std::vector<std::vector<MultiPoly>> grad(n);
    for (int r = 0; r < n; ++r) {
        for (int j = 0; j < n; ++j) grad[r].push_back(poly_diff(eqs[r], j));
    }
    std::vector<std::vector<std::vector<MultiPoly>>> hess;
    if (l == 2) {
        hess.resize(n);
        for (int r = 0; r < n; ++r) {
            hess[r].resize(n);
            for (int p = 0; p < n; ++p) {
                for (int q = 0; q < n; ++q) hess[r][p].push_back(poly_diff(grad[r][p], q));
            }
        }
    }

    cplx residue(0.0);
    for (const CVec& z : tracked_points(prob, a)) {
        Eigen::MatrixXcd J(n, n);
        for (int r = 0; r < n; ++r) {
            for (int j = 0; j < n; ++j) J(r, j) = poly_eval(grad[r][j], z);
        }
        const auto lu = J.partialPivLu();
        if (std::abs(lu.determinant()) <= 1e-12)
            throw SolveError(SolveError::Kind::ZeroJacobian, "trace_derivative_check",
                             "system Jacobian vanishes at a tracked point");
        // d(section)/d a_{k0} = -1, so J . dz = e_{1+k}.
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
        rhs(1 + k) = cplx(1.0);
        const Eigen::VectorXcd dz = lu.solve(rhs);
        if (l == 1) {
            residue += dz(coord_i);
            continue;
        }
        Eigen::VectorXcd v(n);
        for (int r = 0; r < n; ++r) {
            cplx acc(0.0);
            for (int p = 0; p < n; ++p) {
                for (int q = 0; q < n; ++q)
                    acc += poly_eval(hess[r][p][q], z) * dz(p) * dz(q);
            }
            v(r) = acc;
        }
        const Eigen::VectorXcd d2z = lu.solve(-v);
        residue += d2z(coord_i);
    }

    const MultiPoly xi = MultiPoly::variable(n, coord_i);
    const auto trace_at = [&](double delta) {
        ParamPoint shifted = a;
        shifted.a0[k] += delta;
        return trace(prob, xi, shifted);
    };
    cplx fd;
    if (l == 1) {
        const double h = 1e-3;
        fd = (trace_at(h) - trace_at(-h)) / (2.0 * h);
    } else {
        const double h = 2e-2;
        fd = (trace_at(h) - 2.0 * trace_at(0.0) + trace_at(-h)) / (h * h);
    }
    return std::abs(fd - residue);
}

} // namespace abeltrace
