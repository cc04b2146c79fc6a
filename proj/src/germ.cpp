#include "abeltrace/germ.hpp"
#include "abeltrace/errors.hpp"

#include <algorithm>
#include <cmath>

namespace abeltrace {

namespace {

double offset_norm(std::span<const cplx> offset) {
    double m = 0.0;
    for (const cplx& c : offset) m = std::max(m, std::abs(c));
    return m;
}

/// f(sub_0, ..., sub_{n-1}) with every intermediate product truncated at
/// total degree `cap`. All substitution polynomials share one variable count.
MultiPoly compose_truncated(const MultiPoly& f, const std::vector<MultiPoly>& subs, int cap) {
    if (static_cast<int>(subs.size()) != f.num_vars())
        throw ShapeError("compose_truncated", "substitution count mismatch");
    const int out_vars = subs.front().num_vars();
    MultiPoly acc = MultiPoly::zero(out_vars);
    for (const auto& [exps, coeff] : f.terms()) {
        MultiPoly term = MultiPoly::constant(out_vars, coeff);
        for (int j = 0; j < f.num_vars(); ++j) {
            for (int k = 0; k < exps[j]; ++k) term = mul_truncated(term, subs[j], cap);
        }
        acc += term;
    }
    return acc;
}

} // namespace

GermGraph::GermGraph(CVec base_point, int graph_coordinate, MultiPoly series,
                     int truncation_order, double radius)
    : base_point_(std::move(base_point)),
      graph_coordinate_(graph_coordinate),
      series_(std::move(series)),
      truncation_order_(truncation_order),
      radius_(radius) {
    const int n = static_cast<int>(base_point_.size());
    if (n < 2) throw ShapeError("GermGraph", "ambient dimension must be at least 2");
    if (graph_coordinate_ < 0 || graph_coordinate_ >= n)
        throw ShapeError("GermGraph", "graph coordinate out of range");
    if (series_.num_vars() != n - 1)
        throw ShapeError("GermGraph", "series must have one variable per non-graph coordinate");
    if (truncation_order_ < 2)
        throw ShapeError("GermGraph", "truncation order must be at least 2 (first-order data "
                                      "is needed for transversality)");
    if (series_.total_degree() > truncation_order_)
        throw ShapeError("GermGraph", "series degree exceeds truncation order");
    if (!(radius_ > 0.0)) throw ShapeError("GermGraph", "radius must be positive");
    const cplx at_base = series_.coefficient(ExpVec(n - 1, 0));
    const double scale = std::max(1.0, std::abs(base_point_[graph_coordinate_]));
    if (std::abs(at_base - base_point_[graph_coordinate_]) > 1e-6 * scale)
        throw DomainError("GermGraph", "series constant term disagrees with base point");
}

CVec GermGraph::offset_of(std::span<const cplx> x) const {
    if (static_cast<int>(x.size()) != ambient_dim())
        throw ShapeError("GermGraph::offset_of", "point dimension mismatch");
    CVec off;
    off.reserve(base_point_.size() - 1);
    for (int j = 0; j < ambient_dim(); ++j) {
        if (j == graph_coordinate_) continue;
        off.push_back(x[j] - base_point_[j]);
    }
    return off;
}

cplx GermGraph::graph_residual(std::span<const cplx> x) const {
    const CVec off = offset_of(x);
    return x[graph_coordinate_] - poly_eval(series_, off);
}

CVec GermGraph::graph_gradient(std::span<const cplx> x) const {
    const CVec off = offset_of(x);
    CVec grad(ambient_dim(), cplx(0.0));
    grad[graph_coordinate_] = cplx(1.0);
    int k = 0;
    for (int j = 0; j < ambient_dim(); ++j) {
        if (j == graph_coordinate_) continue;
        grad[j] = -poly_eval(poly_diff(series_, k), off);
        ++k;
    }
    return grad;
}

CVec GermGraph::unit_normal() const {
    CVec grad = graph_gradient(base_point_);
    double norm = 0.0;
    for (const cplx& c : grad) norm += std::norm(c);
    norm = std::sqrt(norm);
    for (cplx& c : grad) c /= norm;
    return grad;
}

bool GermGraph::offset_in_domain(std::span<const cplx> offset) const {
    if (static_cast<int>(offset.size()) != ambient_dim() - 1)
        throw ShapeError("GermGraph::offset_in_domain", "offset dimension mismatch");
    return offset_norm(offset) < radius_;
}

CVec germ_eval(const GermGraph& g, std::span<const cplx> offset) {
    if (!g.offset_in_domain(offset))
        throw DomainError("germ_eval", "offset leaves the germ validity polydisc");
    CVec x(g.ambient_dim());
    int k = 0;
    for (int j = 0; j < g.ambient_dim(); ++j) {
        if (j == g.graph_coordinate()) continue;
        x[j] = g.base_point()[j] + offset[k];
        ++k;
    }
    x[g.graph_coordinate()] = poly_eval(g.series(), offset);
    return x;
}

CVec germ_eval(const GermGraph& g, const CVec& offset) {
    return germ_eval(g, std::span<const cplx>(offset));
}

GermGraph germ_from_implicit(const MultiPoly& f, const CVec& point, int graph_coordinate,
                             int order, double radius) {
    const int n = f.num_vars();
    if (static_cast<int>(point.size()) != n)
        throw ShapeError("germ_from_implicit", "point dimension mismatch");
    if (graph_coordinate < 0 || graph_coordinate >= n)
        throw ShapeError("germ_from_implicit", "graph coordinate out of range");
    if (order < 2) throw ShapeError("germ_from_implicit", "order must be at least 2");

    const double fscale = std::max(1.0, f.max_coeff());
    if (std::abs(poly_eval(f, point)) > 1e-8 * fscale)
        throw DomainError("germ_from_implicit", "point does not lie on the hypersurface");
    const MultiPoly df = poly_diff(f, graph_coordinate);
    if (std::abs(poly_eval(df, point)) < 1e-10 * fscale)
        throw DomainError("germ_from_implicit", "graph direction is tangent at the point");

    // Substitutions x_j = base_j + t_k for the free coordinates; the graph
    // coordinate slot is refreshed each Newton sweep.
    std::vector<MultiPoly> subs;
    subs.reserve(n);
    int k = 0;
    for (int j = 0; j < n; ++j) {
        if (j == graph_coordinate) {
            subs.push_back(MultiPoly::zero(n - 1));
        } else {
            subs.push_back(MultiPoly::constant(n - 1, point[j]) + MultiPoly::variable(n - 1, k));
            ++k;
        }
    }

    // Newton iteration in the truncated series ring; a sweep from a series
    // correct mod t^{k+1} is correct mod t^{2k+2}, so capping at 2k+1 loses
    // nothing.
    MultiPoly s = MultiPoly::constant(n - 1, point[graph_coordinate]);
    int correct = 0;
    while (correct < order) {
        const int cap = std::min(2 * correct + 1, order);
        subs[graph_coordinate] = s;
        const MultiPoly num = compose_truncated(f, subs, cap);
        const MultiPoly den = compose_truncated(df, subs, cap);
        s = (s - mul_truncated(num, series_inverse(den, cap), cap)).pruned();
        correct = cap;
    }

    subs[graph_coordinate] = s;
    const MultiPoly residual = compose_truncated(f, subs, order);
    // Convergence means the residual cancels to roundoff.  Near the edge of
    // the disc of convergence the series coefficients grow geometrically, so
    // the roundoff floor is per-coefficient: bound the magnitudes met during
    // the composition by composing absolute values (no cancellation there).
    auto abs_coeffs = [](const MultiPoly& p) {
        MultiPoly a = MultiPoly::zero(p.num_vars());
        for (const auto& [e, c] : p.terms()) a.set_coefficient(e, std::abs(c));
        return a;
    };
    std::vector<MultiPoly> abs_subs;
    abs_subs.reserve(n);
    k = 0;
    for (int j = 0; j < n; ++j) {
        if (j == graph_coordinate) {
            abs_subs.push_back(abs_coeffs(s));
        } else {
            abs_subs.push_back(MultiPoly::constant(n - 1, std::abs(point[j])) +
                               MultiPoly::variable(n - 1, k));
            ++k;
        }
    }
    const MultiPoly bound = compose_truncated(abs_coeffs(f), abs_subs, order);
    for (const auto& [exps, coeff] : residual.terms()) {
        const double noise = 1e-10 * std::max(fscale, std::abs(bound.coefficient(exps)));
        if (std::abs(coeff) > noise)
            throw DomainError("germ_from_implicit", "series expansion did not converge");
    }

    CVec base = point;
    base[graph_coordinate] = s.coefficient(ExpVec(n - 1, 0));
    return GermGraph(std::move(base), graph_coordinate, std::move(s), order, radius);
}

GermGraph fit_radius_to_accuracy(GermGraph g, const MultiPoly& f, double target_residual) {
    const int m = g.ambient_dim() - 1;
    const cplx phases[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    for (int attempt = 0; attempt <= 8; ++attempt) {
        const double r = 0.5 * g.radius();
        double worst = 0.0;
        for (int j = 0; j <= m; ++j) {
            for (const cplx& ph : phases) {
                CVec off(m, cplx(0.0));
                if (j < m) {
                    off[j] = r * ph;
                } else {
                    for (int i = 0; i < m; ++i) off[i] = r * ph;
                }
                worst = std::max(worst, std::abs(poly_eval(f, germ_eval(g, off))));
            }
        }
        if (worst <= target_residual) return g;
        g = GermGraph(g.base_point(), g.graph_coordinate(), g.series(), g.truncation_order(),
                      0.5 * g.radius());
    }
    throw DomainError("fit_radius_to_accuracy",
                      "could not reach the target residual by shrinking the radius");
}

GermGraph recenter_germ(const GermGraph& g, const CVec& new_rest) {
    const int m = g.ambient_dim() - 1;
    if (static_cast<int>(new_rest.size()) != m)
        throw ShapeError("recenter_germ", "expected one coordinate per non-graph variable");
    CVec shift(m);
    int k = 0;
    for (int j = 0; j < g.ambient_dim(); ++j) {
        if (j == g.graph_coordinate()) continue;
        shift[k] = new_rest[k] - g.base_point()[j];
        ++k;
    }
    const double drift = offset_norm(shift);
    if (!(drift < g.radius()))
        throw DomainError("recenter_germ", "new base leaves the germ validity polydisc");

    std::vector<MultiPoly> subs;
    subs.reserve(m);
    for (int j = 0; j < m; ++j)
        subs.push_back(MultiPoly::constant(m, shift[j]) + MultiPoly::variable(m, j));
    MultiPoly series = poly_compose(g.series(), subs).pruned();

    CVec base(g.ambient_dim());
    k = 0;
    for (int j = 0; j < g.ambient_dim(); ++j) {
        if (j == g.graph_coordinate()) continue;
        base[j] = new_rest[k];
        ++k;
    }
    base[g.graph_coordinate()] = series.coefficient(ExpVec(m, 0));
    return GermGraph(std::move(base), g.graph_coordinate(), std::move(series),
                     g.truncation_order(), g.radius() - drift);
}

} // namespace abeltrace
