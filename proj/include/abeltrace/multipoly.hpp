#ifndef ABELTRACE_MULTIPOLY_HPP
#define ABELTRACE_MULTIPOLY_HPP

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace abeltrace {

using cplx = std::complex<double>;
using ExpVec = std::vector<int>;
using CVec = std::vector<cplx>;

/// Sparse multivariate polynomial with complex double coefficients.
///
/// Terms are kept in a map from exponent vector to coefficient. Invariants:
/// no stored coefficient is exactly zero, every exponent vector has length
/// num_vars(), and the zero polynomial is the empty map.
class MultiPoly {
public:
    using TermMap = std::map<ExpVec, cplx>;

    explicit MultiPoly(int num_vars = 1);
    MultiPoly(int num_vars, TermMap terms);

    static MultiPoly zero(int num_vars);
    static MultiPoly constant(int num_vars, cplx c);
    /// The coordinate polynomial x_i (zero-based index).
    static MultiPoly variable(int num_vars, int i);
    static MultiPoly monomial(const ExpVec& exponents, cplx c);

    int num_vars() const { return num_vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Total degree; -1 for the zero polynomial.
    int total_degree() const;
    /// Degree in variable i; -1 for the zero polynomial.
    int degree_in(int i) const;

    cplx coefficient(const ExpVec& exponents) const;
    void set_coefficient(const ExpVec& exponents, cplx c);

    MultiPoly& operator+=(const MultiPoly& other);
    MultiPoly& operator-=(const MultiPoly& other);
    MultiPoly& operator*=(cplx scalar);
    MultiPoly operator+(const MultiPoly& other) const;
    MultiPoly operator-(const MultiPoly& other) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const MultiPoly& other) const;
    MultiPoly operator*(cplx scalar) const;

    MultiPoly pow(int exponent) const;

    /// Drop terms with |c| < rel_tol * max|c|.
    MultiPoly pruned(double rel_tol = 1e-12) const;

    /// Divide by the largest-magnitude coefficient so the interpolant scale
    /// is reproducible. Near-ties (within 1e-4 relative) are broken by the
    /// lexicographically smallest exponent vector.
    MultiPoly normalized() const;

    /// Largest coefficient magnitude (0 for the zero polynomial).
    double max_coeff() const;

    std::string to_string() const;

private:
    int num_vars_;
    TermMap terms_;
};

inline MultiPoly operator*(cplx scalar, const MultiPoly& p) { return p * scalar; }

/// Evaluate p at the point x (length must equal p.num_vars()).
cplx poly_eval(const MultiPoly& p, std::span<const cplx> x);
cplx poly_eval(const MultiPoly& p, const CVec& x);

/// Formal partial derivative with respect to variable i (zero-based).
MultiPoly poly_diff(const MultiPoly& p, int i);

/// Substitute subs[i] for variable i. All substituted polynomials must share
/// a variable count, which becomes the variable count of the result.
MultiPoly poly_compose(const MultiPoly& p, const std::vector<MultiPoly>& subs);

/// Product with all terms of total degree > max_degree dropped.
MultiPoly mul_truncated(const MultiPoly& a, const MultiPoly& b, int max_degree);

/// Truncate to total degree <= max_degree.
MultiPoly truncate_degree(const MultiPoly& p, int max_degree);

/// Reciprocal of a unit power series (nonzero constant term), truncated to
/// total degree <= max_degree.
MultiPoly series_inverse(const MultiPoly& p, int max_degree);

/// Nonzero linear form u_1 x_1 + ... + u_n x_n used to separate the
/// interpolation data.
struct LinearForm {
    CVec coefficients;

    explicit LinearForm(CVec coeffs);

    int num_vars() const { return static_cast<int>(coefficients.size()); }
    cplx eval(std::span<const cplx> x) const;
    cplx eval(const CVec& x) const { return eval(std::span<const cplx>(x)); }
    MultiPoly as_poly() const;
};

} // namespace abeltrace

#endif
