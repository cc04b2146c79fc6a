#ifndef ABELTRACE_POLYTOPE_HPP
#define ABELTRACE_POLYTOPE_HPP

#include "abeltrace/multipoly.hpp"

#include <vector>

namespace abeltrace {

using LatticePoint = std::vector<int>;

/// Convex lattice polytope in ambient dimension 1, 2 or 3. Stores exactly the
/// extreme points of the hull, lexicographically sorted. All arithmetic on
/// these objects is exact integer arithmetic.
class LatticePolytope {
public:
    static LatticePolytope from_points(int ambient_dim, std::vector<LatticePoint> points);

    int ambient_dim() const { return ambient_dim_; }
    const std::vector<LatticePoint>& vertices() const { return vertices_; }

    /// Dimension of the affine span of the vertex set (0 for a point).
    int affine_dim() const;

    bool operator==(const LatticePolytope& other) const {
        return ambient_dim_ == other.ambient_dim_ && vertices_ == other.vertices_;
    }

private:
    LatticePolytope(int ambient_dim, std::vector<LatticePoint> verts)
        : ambient_dim_(ambient_dim), vertices_(std::move(verts)) {}

    int ambient_dim_;
    std::vector<LatticePoint> vertices_;
};

/// Convex hull of the exponent vectors of a nonzero polynomial.
LatticePolytope newton_polytope(const MultiPoly& p);

LatticePolytope minkowski_sum(const LatticePolytope& P, const LatticePolytope& Q);

/// n! times the Euclidean volume, an exact integer; zero for lower-dimensional
/// polytopes.
long long normalized_volume(const LatticePolytope& P);

/// Bernstein-normalized mixed volume of n polytopes in dimension n: the
/// generic count of torus zeros of a system with these Newton polytopes.
/// Computed by inclusion-exclusion over Minkowski sums of subsets.
long long mixed_volume(const std::vector<LatticePolytope>& Ps);

/// True iff every vertex of Q satisfies every facet inequality of P strictly.
/// P must be full-dimensional (otherwise its interior is empty).
bool strict_interior_contains(const LatticePolytope& P, const LatticePolytope& Q);

/// Closed containment of a lattice point, exact for any affine dimension:
/// q is inside iff adjoining it leaves the hull unchanged.
bool contains_point(const LatticePolytope& P, const LatticePoint& q);

/// All lattice points of P (closed), lexicographically sorted.
std::vector<LatticePoint> lattice_points(const LatticePolytope& P);

} // namespace abeltrace

#endif
