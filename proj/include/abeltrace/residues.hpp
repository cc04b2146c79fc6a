#ifndef ABELTRACE_RESIDUES_HPP
#define ABELTRACE_RESIDUES_HPP

#include "abeltrace/multipoly.hpp"
#include "abeltrace/traces.hpp"

#include <optional>
#include <vector>

namespace abeltrace {

/// n polynomial equations in n variables. Zeros may be supplied up front (any
/// n, validated as simple zeros) or solved for by elimination (n <= 2).
class SquareSystem {
public:
    explicit SquareSystem(std::vector<MultiPoly> equations);
    SquareSystem(std::vector<MultiPoly> equations, std::vector<CVec> zeros);

    int dim() const { return static_cast<int>(equations_.size()); }
    const std::vector<MultiPoly>& equations() const { return equations_; }
    bool has_zeros() const { return zeros_.has_value(); }
    const std::vector<CVec>& zeros() const;

private:
    std::vector<MultiPoly> equations_;
    std::optional<std::vector<CVec>> zeros_;
};

/// Jacobian determinant of the system at a point.
cplx jacobian_det(const std::vector<MultiPoly>& equations, const CVec& point);

/// All common torus zeros (every coordinate nonzero), each polished to
/// residual < 1e-10. Built-in elimination covers n <= 2; the zero count must
/// reach the Bernstein bound of the Newton polytopes or GenericityFailure is
/// raised. Supplied zeros are returned as-is.
std::vector<CVec> solve_square(const SquareSystem& sys);

/// Sum over the zeros of h(z)/J(z), or h(z)/(z_1...z_n J(z)) in toric form.
cplx residue_sum(const MultiPoly& h, const SquareSystem& sys, bool toric_form);

/// True iff NP(h) lies strictly inside the Minkowski sum of the NP(f_i):
/// a certificate that the toric residue sum of h over {f_i = 0} vanishes.
/// False predicts nothing.
bool khovanskii_predict(const MultiPoly& h, const std::vector<MultiPoly>& fs);

/// Compares the residue representation of the l-th a_{k0}-derivative of
/// Tr(x_i) against a central finite difference of the sampled trace, at the
/// parameters a. The residue side differentiates implicitly through the
/// square system (f_interp, curve equations) at the tracked points: one
/// linear solve for l = 1 and a Hessian correction for l = 2, so the two
/// sides share no arithmetic. Returns |difference|.
double trace_derivative_check(const TraceProblem& prob, const MultiPoly& f_interp, int coord_i,
                              int k, int l, const ParamPoint& a);

} // namespace abeltrace

#endif
