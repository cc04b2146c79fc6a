#ifndef ABELTRACE_TRACES_HPP
#define ABELTRACE_TRACES_HPP

#include "abeltrace/curves.hpp"
#include "abeltrace/fit.hpp"
#include "abeltrace/germ.hpp"

#include <vector>

namespace abeltrace {

struct ToleranceProfile {
    double fit_tol = 1e-7;                  // on unit-scaled sample values
    double transversality_threshold = 1e-8; // |det| floor at base points
    int steps = 10;                         // continuation waypoints
    int grid_size = 5;                      // sample points per parameter axis
    double grid_radius = 0.0;               // 0 = probe by bisection
    double germ_residual_tol = 1e-7;        // for problem-file validation
    double lead_coeff_threshold = 1e-7;     // "degree exactly attained" floor
    unsigned long long seed = 17;           // for randomized validation stages
};

/// A union of germs together with the moving curve family cutting them.
/// Construction verifies that every germ base point lies on C_{a0}, is
/// transversal to it, and that the base points are pairwise distinct.
class TraceProblem {
public:
    TraceProblem(CurveFamily fam, std::vector<GermGraph> germs, ToleranceProfile tol = {});

    const CurveFamily& family() const { return fam_; }
    const std::vector<GermGraph>& germs() const { return germs_; }
    const ToleranceProfile& tolerances() const { return tol_; }
    const ParamPoint& base_params() const { return fam_.base_params(); }
    int ambient_dim() const { return fam_.ambient_dim(); }
    int num_germs() const { return static_cast<int>(germs_.size()); }

private:
    CurveFamily fam_;
    std::vector<GermGraph> germs_;
    ToleranceProfile tol_;
};

/// Result of fitting sampled trace data against a degree bound.
struct FitVerdict {
    bool is_within_degree;
    MultiPoly fitted;  // polynomial in the absolute a_0 coordinates
    double residual;   // max abs fit error after unit scaling
    double scale;      // magnitude divisor applied before fitting
    CVec grid_center;  // a_0 block of the base parameters
    double grid_radius;
    int grid_size;
};

enum class SampleFlavor { Trace, Norm };

/// Intersection points p_j(a), one per germ, each continued from its base
/// point. Tracker errors carry the germ index.
std::vector<CVec> tracked_points(const TraceProblem& prob, const ParamPoint& a);

/// Sum of f over the intersection points at a.
cplx trace(const TraceProblem& prob, const MultiPoly& f, const ParamPoint& a);

/// Product of f over the intersection points at a.
cplx norm(const TraceProblem& prob, const MultiPoly& f, const ParamPoint& a);

/// Largest radius around the base a_0 at which tracking every germ to the
/// corners and axis extremes of the parameter box succeeds, found by
/// bisection, divided by 4 as a safety margin.
double probe_grid_radius(const TraceProblem& prob);

/// Fits each Tr(f) over a tensor grid in the constants a_0 (all a'_k frozen)
/// by a polynomial of total degree 1. One verdict per listed f; positive iff
/// the unit-scaled residual stays below the profile fit tolerance.
std::vector<FitVerdict> affineness_test(const TraceProblem& prob, const std::vector<MultiPoly>& fs,
                                        double grid_radius, int grid_size);

/// Least degree that fits the trace (or norm) of f as a polynomial in a_{k0}
/// alone, with the leading fitted coefficient above the exactness floor.
/// Throws FitError(NoPolynomialFit) when nothing up to max_probe_degree fits.
int degree_in_param(const TraceProblem& prob, const MultiPoly& f, int k, int max_probe_degree,
                    SampleFlavor flavor);

/// Central-difference residual of the coefficient transport identity
/// d x_i / d a_{ki} = -x_i . d x_i / d a_{k0} for germ j at the base
/// parameters, step h. Second order: the residual shrinks like h^2.
double pde_check(const TraceProblem& prob, int germ_index, int coord_i, int k, double h);

/// True iff the trace of h is a polynomial of degree at most d in a_{k0}.
/// The caller certifies the Newton-polytope hypothesis relating h to the
/// k-th bundle power.
bool trace_degree_bound_check(const TraceProblem& prob, const MultiPoly& h, int d, int k);

} // namespace abeltrace

#endif
