#ifndef ABELTRACE_GERM_HPP
#define ABELTRACE_GERM_HPP

#include "abeltrace/multipoly.hpp"

namespace abeltrace {

/// Truncated power-series graph of one analytic hypersurface germ.
///
/// The germ is the set x_m = series(t) where m = graph_coordinate (zero-based)
/// and t runs over offsets of the remaining coordinates from the base point.
/// `series` maps offsets to the absolute value of coordinate m, so
/// series(0) == base_point[m]. The graph is trusted for offsets with
/// max |t_i| < radius.
class GermGraph {
public:
    GermGraph(CVec base_point, int graph_coordinate, MultiPoly series, int truncation_order,
              double radius);

    const CVec& base_point() const { return base_point_; }
    int graph_coordinate() const { return graph_coordinate_; }
    const MultiPoly& series() const { return series_; }
    int truncation_order() const { return truncation_order_; }
    double radius() const { return radius_; }
    int ambient_dim() const { return static_cast<int>(base_point_.size()); }

    /// Offset of x (ambient point) in the non-graph coordinates.
    CVec offset_of(std::span<const cplx> x) const;

    /// x_m - series(x_rest - base_rest); zero iff x lies on the germ graph.
    cplx graph_residual(std::span<const cplx> x) const;

    /// Gradient of graph_residual at x (length n).
    CVec graph_gradient(std::span<const cplx> x) const;

    /// Unit normal of the germ at its base point.
    CVec unit_normal() const;

    /// True when max |offset_i| < radius.
    bool offset_in_domain(std::span<const cplx> offset) const;

private:
    CVec base_point_;
    int graph_coordinate_;
    MultiPoly series_;
    int truncation_order_;
    double radius_;
};

/// Point of the germ with non-graph coordinates base + offset and graph
/// coordinate given by the truncated series. Errors if the offset leaves the
/// validity polydisc.
CVec germ_eval(const GermGraph& g, std::span<const cplx> offset);
CVec germ_eval(const GermGraph& g, const CVec& offset);

/// Expand the local branch of {f = 0} through `point` as a graph of
/// coordinate `graph_coordinate`, truncated at total degree `order`.
/// Requires a nonvanishing partial of f in the graph direction at the point.
GermGraph germ_from_implicit(const MultiPoly& f, const CVec& point, int graph_coordinate,
                             int order, double radius);

/// Shrink `radius` (halving, at most 8 times) until |f(germ_eval(o))| stays
/// below target_residual on probe offsets at half radius.
GermGraph fit_radius_to_accuracy(GermGraph g, const MultiPoly& f, double target_residual);

/// Re-expand the (truncated) germ around a new base point on the same graph.
/// `new_rest` gives the non-graph coordinates of the new base; the shift must
/// stay inside the current validity radius, which shrinks accordingly.
GermGraph recenter_germ(const GermGraph& g, const CVec& new_rest);

} // namespace abeltrace

#endif
