#ifndef ABELTRACE_CURVES_HPP
#define ABELTRACE_CURVES_HPP

#include "abeltrace/germ.hpp"
#include "abeltrace/multipoly.hpp"

#include <vector>

namespace abeltrace {

/// Coefficient values for one member of a curve family: the separated
/// constants a_{k0} and, per curve equation, one coefficient per support
/// monomial.
struct ParamPoint {
    CVec a0;                  // a_{k0}, k = 1..n-1
    std::vector<CVec> coeffs; // a'_k, aligned with the family supports
};

/// Family of curves C_a = {x : a_{k0} = P_k(a'_k, x), k = 1..n-1} where
/// P_k(a'_k, x) = sum over s in S_k of a'_{ks} x^s.
class CurveFamily {
public:
    CurveFamily(int ambient_dim, std::vector<std::vector<ExpVec>> supports, ParamPoint base);

    int ambient_dim() const { return n_; }
    int num_equations() const { return n_ - 1; }
    const std::vector<ExpVec>& support(int k) const { return supports_[k]; }
    const ParamPoint& base_params() const { return base_; }

    /// Throws ShapeError unless `a` is index-compatible with the supports.
    void validate_params(const ParamPoint& a) const;

    /// P_k(a'_k, x).
    cplx eval_p(int k, const ParamPoint& a, std::span<const cplx> x) const;

    /// Gradient of P_k(a'_k, .) at x.
    CVec grad_p(int k, const ParamPoint& a, std::span<const cplx> x) const;

    /// P_k(a'_k, .) as a polynomial in x.
    MultiPoly curve_poly(int k, const ParamPoint& a) const;

    /// P_k(a'_k, .) - a_{k0}: the section of the k-th bundle cutting C_a.
    MultiPoly curve_section(int k, const ParamPoint& a) const;

private:
    int n_;
    std::vector<std::vector<ExpVec>> supports_;
    ParamPoint base_;
};

/// Component k is a_{k0} - P_k(a'_k, x); the zero vector iff x lies on C_a.
CVec curve_residual(const CurveFamily& fam, const ParamPoint& a, std::span<const cplx> x);
CVec curve_residual(const CurveFamily& fam, const ParamPoint& a, const CVec& x);

/// True iff every listed point lies on C_a within tol (vacuously true when
/// the list is empty).
bool on_curve_check(const CurveFamily& fam, const ParamPoint& a,
                    const std::vector<CVec>& points, double tol);

/// Magnitude of the determinant of the square system (curve equations, germ
/// graph equation) at p. Requires p inside the germ polydisc and on C_a.
double transversality_check(const GermGraph& germ, const CurveFamily& fam, const ParamPoint& a,
                            const CVec& p);

/// Convex combination (1-t) a + t b of two parameter points.
ParamPoint lerp_params(const ParamPoint& a, const ParamPoint& b, double t);

/// Continue the intersection point of the germ with C_a from a_start to
/// a_target along the straight parameter segment with `steps` waypoints,
/// Euler-predicting and Newton-correcting at each one. Segments that fail to
/// contract are bisected, at most 6 times. Throws TrackError naming the
/// waypoint on divergence, domain exit or transversality loss.
CVec track_point(const GermGraph& germ, const CurveFamily& fam, const ParamPoint& a_start,
                 const CVec& p_start, const ParamPoint& a_target, int steps);

} // namespace abeltrace

#endif
