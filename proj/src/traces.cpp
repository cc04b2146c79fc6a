#include "abeltrace/traces.hpp"
#include "abeltrace/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace abeltrace {

namespace {

CVec track_one(const TraceProblem& prob, int j, const ParamPoint& a) {
    try {
        return track_point(prob.germs()[j], prob.family(), prob.base_params(),
                           prob.germs()[j].base_point(), a, prob.tolerances().steps);
    } catch (TrackError& e) {
        e.set_germ(j);
        throw;
    }
}

std::vector<double> linspace(double radius, int size) {
    std::vector<double> out(size);
    for (int i = 0; i < size; ++i)
        out[i] = -radius + 2.0 * radius * static_cast<double>(i) / (size - 1);
    return out;
}

ParamPoint shift_a0(const ParamPoint& base, std::span<const double> delta) {
    ParamPoint a = base;
    for (size_t k = 0; k < delta.size(); ++k) a.a0[k] += delta[k];
    return a;
}

double magnitude_scale(const CVec& values) {
    double s = 0.0;
    for (const cplx& v : values) s = std::max(s, std::abs(v));
    return s > 1e-300 ? s : 1.0;
}

} // namespace

TraceProblem::TraceProblem(CurveFamily fam, std::vector<GermGraph> germs, ToleranceProfile tol)
    : fam_(std::move(fam)), germs_(std::move(germs)), tol_(tol) {
    if (germs_.empty()) throw ShapeError("TraceProblem", "need at least one germ");
    std::vector<CVec> bases;
    for (const GermGraph& g : germs_) {
        if (g.ambient_dim() != fam_.ambient_dim())
            throw ShapeError("TraceProblem", "germ and family dimension mismatch");
        bases.push_back(g.base_point());
    }
    if (!on_curve_check(fam_, fam_.base_params(), bases, 1e-8))
        throw ValidationError(ValidationError::Kind::ValidationFailed, "TraceProblem",
                              "a germ base point does not lie on the base curve");
    for (size_t j = 0; j < germs_.size(); ++j) {
        const double det = transversality_check(germs_[j], fam_, fam_.base_params(), bases[j]);
        if (det <= tol_.transversality_threshold)
            throw ValidationError(ValidationError::Kind::ValidationFailed, "TraceProblem",
                                  "germ " + std::to_string(j) +
                                      " meets the base curve non-transversally");
    }
    for (size_t i = 0; i < bases.size(); ++i) {
        for (size_t j = i + 1; j < bases.size(); ++j) {
            double dist = 0.0;
            for (size_t c = 0; c < bases[i].size(); ++c)
                dist = std::max(dist, std::abs(bases[i][c] - bases[j][c]));
            if (dist <= 1e-9)
                throw ValidationError(ValidationError::Kind::ValidationFailed, "TraceProblem",
                                      "germ base points must be pairwise distinct");
        }
    }
}

std::vector<CVec> tracked_points(const TraceProblem& prob, const ParamPoint& a) {
    std::vector<CVec> pts;
    pts.reserve(prob.num_germs());
    for (int j = 0; j < prob.num_germs(); ++j) pts.push_back(track_one(prob, j, a));
    return pts;
}

cplx trace(const TraceProblem& prob, const MultiPoly& f, const ParamPoint& a) {
    if (f.num_vars() != prob.ambient_dim())
        throw ShapeError("trace", "polynomial variable count mismatch");
    cplx acc(0.0);
    for (const CVec& p : tracked_points(prob, a)) acc += poly_eval(f, p);
    return acc;
}

cplx norm(const TraceProblem& prob, const MultiPoly& f, const ParamPoint& a) {
    if (f.num_vars() != prob.ambient_dim())
        throw ShapeError("norm", "polynomial variable count mismatch");
    cplx acc(1.0);
    for (const CVec& p : tracked_points(prob, a)) acc *= poly_eval(f, p);
    return acc;
}

double probe_grid_radius(const TraceProblem& prob) {
    const int m = prob.ambient_dim() - 1;
    const auto succeeds = [&](double r) {
        std::vector<std::vector<double>> targets;
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            std::vector<double> d(m);
            for (int k = 0; k < m; ++k) d[k] = (mask & (1u << k)) ? r : -r;
            targets.push_back(std::move(d));
        }
        if (m > 1) {
            for (int k = 0; k < m; ++k) {
                for (double s : {-r, r}) {
                    std::vector<double> d(m, 0.0);
                    d[k] = s;
                    targets.push_back(std::move(d));
                }
            }
        }
        for (const auto& d : targets) {
            try {
                tracked_points(prob, shift_a0(prob.base_params(), d));
            } catch (const TrackError&) {
                return false;
            } catch (const DomainError&) {
                return false;
            }
        }
        return true;
    };

    double lo = 1.0;
    int halvings = 0;
    while (!succeeds(lo)) {
        lo *= 0.5;
        if (++halvings > 40)
            throw DomainError("probe_grid_radius", "tracking fails at every probe radius");
    }
    if (halvings == 0) return lo / 4.0;
    double hi = 2.0 * lo;
    for (int i = 0; i < 8; ++i) {
        const double mid = 0.5 * (lo + hi);
        (succeeds(mid) ? lo : hi) = mid;
    }
    return lo / 4.0;
}

std::vector<FitVerdict> affineness_test(const TraceProblem& prob, const std::vector<MultiPoly>& fs,
                                        double grid_radius, int grid_size) {
    if (fs.empty()) throw ShapeError("affineness_test", "no functions to test");
    for (const MultiPoly& f : fs) {
        if (f.num_vars() != prob.ambient_dim())
            throw ShapeError("affineness_test", "polynomial variable count mismatch");
    }
    if (grid_size < 2) throw ShapeError("affineness_test", "grid needs at least 2 points per axis");
    const double radius = grid_radius > 0.0 ? grid_radius : probe_grid_radius(prob);
    const int m = prob.ambient_dim() - 1;
    const std::vector<double> axis = linspace(radius, grid_size);

    long total = 1;
    for (int k = 0; k < m; ++k) total *= grid_size;
    std::vector<std::vector<FitSample>> samples(fs.size());
    for (long node = 0; node < total; ++node) {
        std::vector<double> delta(m);
        long rest = node;
        for (int k = 0; k < m; ++k) {
            delta[k] = axis[rest % grid_size];
            rest /= grid_size;
        }
        std::vector<CVec> pts;
        try {
            pts = tracked_points(prob, shift_a0(prob.base_params(), delta));
        } catch (const TrackError& e) {
            TrackError out(e.kind(), e.waypoint(),
                           std::string(e.what()) + " (grid node " + std::to_string(node) + ")");
            out.set_germ(e.germ());
            throw out;
        }
        CVec param(delta.begin(), delta.end());
        for (size_t fi = 0; fi < fs.size(); ++fi) {
            cplx acc(0.0);
            for (const CVec& p : pts) acc += poly_eval(fs[fi], p);
            samples[fi].emplace_back(param, acc);
        }
    }

    // Fit in centered offsets for conditioning, then shift back so the
    // reported coefficients live in absolute a_0 coordinates.
    std::vector<MultiPoly> shift_subs;
    for (int k = 0; k < m; ++k)
        shift_subs.push_back(MultiPoly::variable(m, k) -
                             MultiPoly::constant(m, prob.base_params().a0[k]));

    std::vector<FitVerdict> verdicts;
    for (size_t fi = 0; fi < fs.size(); ++fi) {
        CVec vals;
        for (const auto& [pt, v] : samples[fi]) vals.push_back(v);
        const double scale = magnitude_scale(vals);
        std::vector<FitSample> scaled = samples[fi];
        for (auto& [pt, v] : scaled) v /= scale;
        FitResult fr = fit_poly(scaled, 1);
        FitVerdict v;
        v.residual = fr.residual;
        v.is_within_degree = fr.residual < prob.tolerances().fit_tol;
        v.scale = scale;
        v.fitted = (poly_compose(fr.poly, shift_subs) * cplx(scale)).pruned();
        v.grid_center = prob.base_params().a0;
        v.grid_radius = radius;
        v.grid_size = grid_size;
        verdicts.push_back(std::move(v));
    }
    return verdicts;
}

int degree_in_param(const TraceProblem& prob, const MultiPoly& f, int k, int max_probe_degree,
                    SampleFlavor flavor) {
    if (k < 0 || k >= prob.ambient_dim() - 1)
        throw ShapeError("degree_in_param", "curve equation index out of range");
    if (max_probe_degree < 0) throw ShapeError("degree_in_param", "negative probe degree");
    const double radius = prob.tolerances().grid_radius > 0.0 ? prob.tolerances().grid_radius
                                                              : probe_grid_radius(prob);
    const int count = std::max(prob.tolerances().grid_size, max_probe_degree + 3);
    const std::vector<double> axis = linspace(radius, count);
    const int m = prob.ambient_dim() - 1;

    std::vector<FitSample> samples;
    for (double t : axis) {
        std::vector<double> delta(m, 0.0);
        delta[k] = t;
        const ParamPoint a = shift_a0(prob.base_params(), delta);
        const cplx v = flavor == SampleFlavor::Trace ? trace(prob, f, a) : norm(prob, f, a);
        samples.emplace_back(CVec{cplx(t)}, v);
    }
    CVec vals;
    for (const auto& [pt, v] : samples) vals.push_back(v);
    const double scale = magnitude_scale(vals);
    for (auto& [pt, v] : samples) v /= scale;

    for (int deg = 0; deg <= max_probe_degree; ++deg) {
        const FitResult fr = fit_poly(samples, deg);
        if (fr.residual >= prob.tolerances().fit_tol) continue;
        int top = 0;
        for (const auto& [exps, coeff] : fr.poly.terms()) {
            if (std::abs(coeff) >= prob.tolerances().lead_coeff_threshold)
                top = std::max(top, exps[0]);
        }
        return top;
    }
    throw FitError(FitError::Kind::NoPolynomialFit, "degree_in_param",
                   "no polynomial of degree at most " + std::to_string(max_probe_degree) +
                       " fits the sampled parameter dependence");
}

double pde_check(const TraceProblem& prob, int germ_index, int coord_i, int k, double h) {
    if (germ_index < 0 || germ_index >= prob.num_germs())
        throw ShapeError("pde_check", "germ index out of range");
    if (coord_i < 0 || coord_i >= prob.ambient_dim())
        throw ShapeError("pde_check", "coordinate index out of range");
    if (k < 0 || k >= prob.ambient_dim() - 1)
        throw ShapeError("pde_check", "curve equation index out of range");
    if (!(h > 0.0)) throw ShapeError("pde_check", "step must be positive");

    ExpVec unit(prob.ambient_dim(), 0);
    unit[coord_i] = 1;
    const auto& sup = prob.family().support(k);
    const auto it = std::find(sup.begin(), sup.end(), unit);
    const long idx = it - sup.begin();

    const auto coord_at = [&](const ParamPoint& a) {
        return track_one(prob, germ_index, a)[coord_i];
    };

    ParamPoint plus = prob.base_params();
    ParamPoint minus = prob.base_params();
    plus.a0[k] += h;
    minus.a0[k] -= h;
    const cplx d_a0 = (coord_at(plus) - coord_at(minus)) / (2.0 * h);

    plus = prob.base_params();
    minus = prob.base_params();
    plus.coeffs[k][idx] += h;
    minus.coeffs[k][idx] -= h;
    const cplx d_aki = (coord_at(plus) - coord_at(minus)) / (2.0 * h);

    const cplx xi = prob.germs()[germ_index].base_point()[coord_i];
    return std::abs(d_aki + xi * d_a0);
}

bool trace_degree_bound_check(const TraceProblem& prob, const MultiPoly& h, int d, int k) {
    if (d < 0) throw ShapeError("trace_degree_bound_check", "negative degree bound");
    return degree_in_param(prob, h, k, d + 2, SampleFlavor::Trace) <= d;
}

} // namespace abeltrace
