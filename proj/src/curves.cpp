#include "abeltrace/curves.hpp"
#include "abeltrace/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace abeltrace {

namespace {

constexpr double kDetThreshold = 1e-8; // transversality floor for tracking
constexpr double kNewtonTol = 1e-13;
constexpr double kNewtonAccept = 1e-11;
constexpr int kMaxNewtonIters = 20;
constexpr int kMaxHalvings = 6;

cplx mono_eval(std::span<const cplx> x, const ExpVec& s) {
    cplx v(1.0);
    for (size_t j = 0; j < s.size(); ++j) {
        for (int k = 0; k < s[j]; ++k) v *= x[j];
    }
    return v;
}

} // namespace

CurveFamily::CurveFamily(int ambient_dim, std::vector<std::vector<ExpVec>> supports,
                         ParamPoint base)
    : n_(ambient_dim), supports_(std::move(supports)), base_(std::move(base)) {
    if (n_ < 2) throw ShapeError("CurveFamily", "ambient dimension must be at least 2");
    if (static_cast<int>(supports_.size()) != n_ - 1)
        throw ShapeError("CurveFamily", "need one support per curve equation");
    for (int k = 0; k < n_ - 1; ++k) {
        const auto& sup = supports_[k];
        if (sup.empty()) throw ShapeError("CurveFamily", "empty support");
        for (const ExpVec& s : sup) {
            if (static_cast<int>(s.size()) != n_)
                throw ShapeError("CurveFamily", "exponent dimension mismatch");
            bool all_zero = true;
            for (int e : s) {
                if (e < 0) throw ShapeError("CurveFamily", "negative exponent");
                all_zero = all_zero && e == 0;
            }
            if (all_zero)
                throw ShapeError("CurveFamily",
                                 "constant term belongs to the separated parameter a_k0");
        }
        for (size_t i = 0; i < sup.size(); ++i) {
            for (size_t j = i + 1; j < sup.size(); ++j) {
                if (sup[i] == sup[j]) throw ShapeError("CurveFamily", "duplicate support entry");
            }
        }
        for (int i = 0; i < n_; ++i) {
            ExpVec unit(n_, 0);
            unit[i] = 1;
            if (std::find(sup.begin(), sup.end(), unit) == sup.end())
                throw ShapeError("CurveFamily", "every coordinate monomial must appear in "
                                                "every support");
        }
    }
    validate_params(base_);
}

void CurveFamily::validate_params(const ParamPoint& a) const {
    if (static_cast<int>(a.a0.size()) != n_ - 1)
        throw ShapeError("CurveFamily", "a_0 must have one entry per curve equation");
    if (static_cast<int>(a.coeffs.size()) != n_ - 1)
        throw ShapeError("CurveFamily", "coefficient block count mismatch");
    for (int k = 0; k < n_ - 1; ++k) {
        if (a.coeffs[k].size() != supports_[k].size())
            throw ShapeError("CurveFamily", "coefficient count differs from support size");
    }
}

cplx CurveFamily::eval_p(int k, const ParamPoint& a, std::span<const cplx> x) const {
    cplx acc(0.0);
    for (size_t i = 0; i < supports_[k].size(); ++i)
        acc += a.coeffs[k][i] * mono_eval(x, supports_[k][i]);
    return acc;
}

CVec CurveFamily::grad_p(int k, const ParamPoint& a, std::span<const cplx> x) const {
    CVec grad(n_, cplx(0.0));
    for (size_t i = 0; i < supports_[k].size(); ++i) {
        const ExpVec& s = supports_[k][i];
        for (int j = 0; j < n_; ++j) {
            if (s[j] == 0) continue;
            cplx v = a.coeffs[k][i] * static_cast<double>(s[j]);
            for (int m = 0; m < n_; ++m) {
                const int e = (m == j) ? s[m] - 1 : s[m];
                for (int t = 0; t < e; ++t) v *= x[m];
            }
            grad[j] += v;
        }
    }
    return grad;
}

MultiPoly CurveFamily::curve_poly(int k, const ParamPoint& a) const {
    MultiPoly::TermMap terms;
    for (size_t i = 0; i < supports_[k].size(); ++i) {
        if (a.coeffs[k][i] != cplx(0.0)) terms[supports_[k][i]] = a.coeffs[k][i];
    }
    return MultiPoly(n_, std::move(terms));
}

MultiPoly CurveFamily::curve_section(int k, const ParamPoint& a) const {
    return curve_poly(k, a) - MultiPoly::constant(n_, a.a0[k]);
}

CVec curve_residual(const CurveFamily& fam, const ParamPoint& a, std::span<const cplx> x) {
    fam.validate_params(a);
    if (static_cast<int>(x.size()) != fam.ambient_dim())
        throw ShapeError("curve_residual", "point dimension mismatch");
    CVec r(fam.num_equations());
    for (int k = 0; k < fam.num_equations(); ++k) r[k] = a.a0[k] - fam.eval_p(k, a, x);
    return r;
}

CVec curve_residual(const CurveFamily& fam, const ParamPoint& a, const CVec& x) {
    return curve_residual(fam, a, std::span<const cplx>(x));
}

bool on_curve_check(const CurveFamily& fam, const ParamPoint& a, const std::vector<CVec>& points,
                    double tol) {
    for (const CVec& p : points) {
        for (const cplx& r : curve_residual(fam, a, p)) {
            if (std::abs(r) >= tol) return false;
        }
    }
    return true;
}

namespace {

/// Rows 0..n-2 are the gradients of a_{k0} - P_k, the last row is the germ
/// graph gradient.
void fill_system_jacobian(const GermGraph& germ, const CurveFamily& fam, const ParamPoint& a,
                          const CVec& x, Eigen::MatrixXcd& J) {
    const int n = fam.ambient_dim();
    for (int k = 0; k < n - 1; ++k) {
        const CVec g = fam.grad_p(k, a, x);
        for (int j = 0; j < n; ++j) J(k, j) = -g[j];
    }
    const CVec g = germ.graph_gradient(x);
    for (int j = 0; j < n; ++j) J(n - 1, j) = g[j];
}

double system_residual(const GermGraph& germ, const CurveFamily& fam, const ParamPoint& a,
                       const CVec& x, Eigen::VectorXcd& F) {
    const int n = fam.ambient_dim();
    double worst = 0.0;
    for (int k = 0; k < n - 1; ++k) {
        F(k) = a.a0[k] - fam.eval_p(k, a, x);
        worst = std::max(worst, std::abs(F(k)));
    }
    F(n - 1) = germ.graph_residual(x);
    return std::max(worst, std::abs(F(n - 1)));
}

enum class HopFail { None, Diverged, LeftDomain };

HopFail try_correct(const GermGraph& germ, const CurveFamily& fam, const ParamPoint& a, CVec& x) {
    const int n = fam.ambient_dim();
    Eigen::MatrixXcd J(n, n);
    Eigen::VectorXcd F(n);
    for (int iter = 0; iter < kMaxNewtonIters; ++iter) {
        if (!germ.offset_in_domain(germ.offset_of(x))) return HopFail::LeftDomain;
        const double res = system_residual(germ, fam, a, x, F);
        if (!std::isfinite(res)) return HopFail::Diverged;
        if (res < kNewtonTol) return HopFail::None;
        fill_system_jacobian(germ, fam, a, x, J);
        const Eigen::VectorXcd dx = J.partialPivLu().solve(-F);
        for (int j = 0; j < n; ++j) x[j] += dx(j);
    }
    if (!germ.offset_in_domain(germ.offset_of(x))) return HopFail::LeftDomain;
    return system_residual(germ, fam, a, x, F) < kNewtonAccept ? HopFail::None
                                                               : HopFail::Diverged;
}

CVec hop(const GermGraph& germ, const CurveFamily& fam, const ParamPoint& a_from, CVec x,
         const ParamPoint& a_to, int depth, int waypoint) {
    const int n = fam.ambient_dim();

    // Euler predictor: J dx = -dF/da . da along this hop.
    Eigen::MatrixXcd J(n, n);
    Eigen::VectorXcd rhs(n);
    fill_system_jacobian(germ, fam, a_from, x, J);
    for (int k = 0; k < n - 1; ++k) {
        cplx shift = a_to.a0[k] - a_from.a0[k];
        for (size_t i = 0; i < fam.support(k).size(); ++i) {
            const cplx dc = a_to.coeffs[k][i] - a_from.coeffs[k][i];
            if (dc != cplx(0.0)) shift -= dc * mono_eval(x, fam.support(k)[i]);
        }
        rhs(k) = -shift;
    }
    rhs(n - 1) = cplx(0.0);
    const Eigen::VectorXcd dx = J.partialPivLu().solve(rhs);
    CVec xp = x;
    if (dx.allFinite()) {
        for (int j = 0; j < n; ++j) xp[j] += dx(j);
    }

    const HopFail fail = try_correct(germ, fam, a_to, xp);
    if (fail == HopFail::None) return xp;
    if (depth >= kMaxHalvings) {
        if (fail == HopFail::LeftDomain)
            throw TrackError(TrackError::Kind::LeftGermDomain, waypoint,
                             "iterate left the germ validity polydisc");
        throw TrackError(TrackError::Kind::NewtonDivergence, waypoint,
                         "Newton correction failed to contract");
    }
    const ParamPoint mid = lerp_params(a_from, a_to, 0.5);
    CVec xm = hop(germ, fam, a_from, std::move(x), mid, depth + 1, waypoint);
    return hop(germ, fam, mid, std::move(xm), a_to, depth + 1, waypoint);
}

} // namespace

double transversality_check(const GermGraph& germ, const CurveFamily& fam, const ParamPoint& a,
                            const CVec& p) {
    fam.validate_params(a);
    if (germ.ambient_dim() != fam.ambient_dim())
        throw ShapeError("transversality_check", "germ and family dimension mismatch");
    if (!germ.offset_in_domain(germ.offset_of(p)))
        throw DomainError("transversality_check", "point outside the germ validity polydisc");
    for (const cplx& r : curve_residual(fam, a, p)) {
        if (std::abs(r) > 1e-8)
            throw DomainError("transversality_check", "point does not lie on the curve");
    }
    const int n = fam.ambient_dim();
    Eigen::MatrixXcd J(n, n);
    fill_system_jacobian(germ, fam, a, p, J);
    return std::abs(J.determinant());
}

ParamPoint lerp_params(const ParamPoint& a, const ParamPoint& b, double t) {
    if (a.a0.size() != b.a0.size() || a.coeffs.size() != b.coeffs.size())
        throw ShapeError("lerp_params", "parameter shapes differ");
    ParamPoint out;
    out.a0.resize(a.a0.size());
    for (size_t k = 0; k < a.a0.size(); ++k) out.a0[k] = (1.0 - t) * a.a0[k] + t * b.a0[k];
    out.coeffs.resize(a.coeffs.size());
    for (size_t k = 0; k < a.coeffs.size(); ++k) {
        if (a.coeffs[k].size() != b.coeffs[k].size())
            throw ShapeError("lerp_params", "parameter shapes differ");
        out.coeffs[k].resize(a.coeffs[k].size());
        for (size_t i = 0; i < a.coeffs[k].size(); ++i)
            out.coeffs[k][i] = (1.0 - t) * a.coeffs[k][i] + t * b.coeffs[k][i];
    }
    return out;
}

CVec track_point(const GermGraph& germ, const CurveFamily& fam, const ParamPoint& a_start,
                 const CVec& p_start, const ParamPoint& a_target, int steps) {
    fam.validate_params(a_start);
    fam.validate_params(a_target);
    if (steps < 1) throw ShapeError("track_point", "need at least one step");
    if (germ.ambient_dim() != fam.ambient_dim())
        throw ShapeError("track_point", "germ and family dimension mismatch");
    if (static_cast<int>(p_start.size()) != fam.ambient_dim())
        throw ShapeError("track_point", "seed dimension mismatch");

    CVec x = p_start;
    if (try_correct(germ, fam, a_start, x) != HopFail::None)
        throw DomainError("track_point", "seed does not solve the start system");
    if (transversality_check(germ, fam, a_start, x) < kDetThreshold)
        throw TrackError(TrackError::Kind::TransversalityLoss, 0,
                         "start point is not transversal");

    ParamPoint prev = a_start;
    for (int i = 1; i <= steps; ++i) {
        const ParamPoint next = lerp_params(a_start, a_target, static_cast<double>(i) / steps);
        x = hop(germ, fam, prev, std::move(x), next, 0, i);
        if (transversality_check(germ, fam, next, x) < kDetThreshold)
            throw TrackError(TrackError::Kind::TransversalityLoss, i,
                             "transversality lost along the path");
        prev = next;
    }
    return x;
}

} // namespace abeltrace
