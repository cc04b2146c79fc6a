#ifndef ABELTRACE_RECONSTRUCT_HPP
#define ABELTRACE_RECONSTRUCT_HPP

#include "abeltrace/polytope.hpp"
#include "abeltrace/traces.hpp"

#include <vector>

namespace abeltrace {

/// Monic characteristic polynomial of the moving intersection points under a
/// linear form u: Y^N - e_1 Y^{N-1} + ... + (-1)^N e_N, with each e_l fitted
/// as a polynomial of total degree <= l in the a_0 variables (a' frozen at
/// the base).
struct CharPoly {
    int N = 0;
    std::vector<MultiPoly> e;  // e[l-1], in absolute a_0 coordinates
    double max_fit_residual = 0.0;
};

/// Candidate divisor class data for the certificate: a polytope representing
/// the class, test divisors with sections, and the remaining bundle polytopes.
struct DivisorSpec {
    LatticePolytope polytope;  // P_E
    MultiPoly section;         // f with NP(f) inside P_E
};

struct ClassSpec {
    LatticePolytope alpha_polytope;
    std::vector<DivisorSpec> divisors;
    std::vector<LatticePolytope> bundle_polytopes;  // P_{L_2}..P_{L_{n-1}}

    /// Shape and containment invariants; throws on violation.
    void validate(int ambient_dim) const;
};

struct InterpolationResult {
    MultiPoly Q;  // normalized: largest coefficient is 1
    LinearForm u;
    CharPoly char_poly;
    double max_germ_residual = 0.0;
    long long bernstein_degree = 0;
};

struct DivisorReport {
    long long predicted = 0;
    int observed = 0;
    bool matches = false;
    int retries = 0;  // random replacement sections consumed
};

struct ClassReport {
    bool positive = false;
    std::vector<DivisorReport> divisors;
};

/// Newton polytope of the k-th curve bundle: conv(S_k united with 0).
LatticePolytope bundle_polytope(const CurveFamily& fam, int k);

/// Random unit linear form u with |<u, germ normal>| > 1e-3 at every germ
/// base point, deterministic given the problem seed. Throws
/// ValidationError(ExhaustedAttempts) when the budget runs out.
LinearForm choose_linear_form(const TraceProblem& prob, int attempts);

/// Samples power-sum traces of u on an a_0 grid, converts pointwise to
/// elementary symmetric values, and fits each e_l. Throws
/// FitError(FitResidualExceeded) when some e_l is not polynomial of degree l
/// (the interpolation criterion fails at this N).
CharPoly characteristic_poly(const TraceProblem& prob, const LinearForm& u);

/// Full reconstruction: Q(x) = F_u(u(x), P_1(x), ..., P_{n-1}(x)), validated
/// against every germ on random offsets and against the Bernstein degree
/// count. Q is returned normalized.
InterpolationResult interpolate(const TraceProblem& prob);

/// Per-divisor comparison of the observed a_{10} degree of the norm of each
/// section with the mixed-volume prediction of the candidate class. When the
/// observed degree falls short, up to 5 random sections supported in the
/// divisor polytope are tried before reporting the shortfall.
ClassReport class_certificate(const TraceProblem& prob, const InterpolationResult& result,
                              const ClassSpec& spec);

} // namespace abeltrace

#endif
