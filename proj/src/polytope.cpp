#include "abeltrace/polytope.hpp"
#include "abeltrace/errors.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

namespace abeltrace {

namespace {

long long dot(const LatticePoint& a, const LatticePoint& b) {
    long long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += static_cast<long long>(a[i]) * b[i];
    return s;
}

LatticePoint sub(const LatticePoint& a, const LatticePoint& b) {
    LatticePoint d(a.size());
    for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

bool is_zero(const LatticePoint& a) {
    return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
}

long long cross2(const LatticePoint& a, const LatticePoint& b) {
    return static_cast<long long>(a[0]) * b[1] - static_cast<long long>(a[1]) * b[0];
}

LatticePoint cross3(const LatticePoint& a, const LatticePoint& b) {
    return {static_cast<int>(static_cast<long long>(a[1]) * b[2] - static_cast<long long>(a[2]) * b[1]),
            static_cast<int>(static_cast<long long>(a[2]) * b[0] - static_cast<long long>(a[0]) * b[2]),
            static_cast<int>(static_cast<long long>(a[0]) * b[1] - static_cast<long long>(a[1]) * b[0])};
}

long long det3(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
    return dot(cross3(a, b), c);
}

std::vector<LatticePoint> dedup(std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

int affine_dimension(const std::vector<LatticePoint>& pts, int ambient) {
    std::vector<LatticePoint> diffs;
    for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
    int rank = 0;
    for (const auto& d : diffs) {
        if (!is_zero(d)) {
            rank = 1;
            break;
        }
    }
    if (rank == 0 || ambient == 1) return rank;
    bool rank2 = false;
    for (size_t i = 0; i < diffs.size() && !rank2; ++i) {
        for (size_t j = i + 1; j < diffs.size() && !rank2; ++j) {
            if (ambient == 2) {
                rank2 = cross2(diffs[i], diffs[j]) != 0;
            } else {
                rank2 = !is_zero(cross3(diffs[i], diffs[j]));
            }
        }
    }
    if (!rank2 || ambient == 2) return rank2 ? 2 : 1;
    for (size_t i = 0; i < diffs.size(); ++i) {
        for (size_t j = i + 1; j < diffs.size(); ++j) {
            for (size_t k = j + 1; k < diffs.size(); ++k) {
                if (det3(diffs[i], diffs[j], diffs[k]) != 0) return 3;
            }
        }
    }
    return 2;
}

/// Counter-clockwise hull cycle of deduplicated 2d points; strict turns only,
/// so collinear interior points disappear. Falls back to the two lexicographic
/// endpoints for collinear input.
std::vector<LatticePoint> chain2(std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<LatticePoint> h;
    auto build = [&](auto begin, auto end) {
        const size_t base = h.size();
        for (auto it = begin; it != end; ++it) {
            while (h.size() >= base + 2 &&
                   cross2(sub(h.back(), h[h.size() - 2]), sub(*it, h.back())) <= 0)
                h.pop_back();
            h.push_back(*it);
        }
        h.pop_back();
    };
    build(pts.begin(), pts.end());
    build(pts.rbegin(), pts.rend());
    return h;
}

struct Facet {
    LatticePoint normal; // primitive outward normal
    long long offset;    // normal . x <= offset on the polytope
};

std::vector<Facet> facets3(const std::vector<LatticePoint>& pts) {
    std::set<std::pair<LatticePoint, long long>> seen;
    std::vector<Facet> out;
    const size_t m = pts.size();
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            for (size_t k = j + 1; k < m; ++k) {
                LatticePoint n = cross3(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
                if (is_zero(n)) continue;
                long long c = dot(n, pts[i]);
                bool below = true, above = true;
                for (const auto& p : pts) {
                    const long long d = dot(n, p) - c;
                    below = below && d <= 0;
                    above = above && d >= 0;
                }
                if (!below && !above) continue;
                if (!below) {
                    for (int& v : n) v = -v;
                    c = -c;
                }
                int g = 0;
                for (int v : n) g = std::gcd(g, std::abs(v));
                for (int& v : n) v /= g;
                c /= g;
                if (seen.emplace(n, c).second) out.push_back(Facet{std::move(n), c});
            }
        }
    }
    return out;
}

std::vector<LatticePoint> hull3(const std::vector<LatticePoint>& pts) {
    const std::vector<Facet> facets = facets3(pts);
    std::vector<LatticePoint> verts;
    for (const auto& p : pts) {
        std::vector<const LatticePoint*> tight;
        for (const auto& f : facets) {
            if (dot(f.normal, p) == f.offset) tight.push_back(&f.normal);
        }
        bool extreme = false;
        for (size_t i = 0; i < tight.size() && !extreme; ++i)
            for (size_t j = i + 1; j < tight.size() && !extreme; ++j)
                for (size_t k = j + 1; k < tight.size() && !extreme; ++k)
                    extreme = det3(*tight[i], *tight[j], *tight[k]) != 0;
        if (extreme) verts.push_back(p);
    }
    return verts;
}

/// Cyclic vertex order of one facet of a 3d polytope, obtained by projecting
/// out the coordinate where the facet normal is largest.
std::vector<LatticePoint> facet_cycle(const std::vector<LatticePoint>& verts, const Facet& f) {
    int drop = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(f.normal[i]) > std::abs(f.normal[drop])) drop = i;
    std::vector<std::pair<LatticePoint, LatticePoint>> proj; // (2d image, original)
    for (const auto& v : verts) {
        if (dot(f.normal, v) != f.offset) continue;
        LatticePoint q;
        for (int i = 0; i < 3; ++i)
            if (i != drop) q.push_back(v[i]);
        proj.emplace_back(std::move(q), v);
    }
    std::vector<LatticePoint> images;
    images.reserve(proj.size());
    for (const auto& [q, v] : proj) images.push_back(q);
    std::vector<LatticePoint> cycle2 = chain2(std::move(images));
    std::vector<LatticePoint> cycle;
    for (const auto& q : cycle2) {
        for (const auto& [img, orig] : proj) {
            if (img == q) {
                cycle.push_back(orig);
                break;
            }
        }
    }
    return cycle;
}

} // namespace

LatticePolytope LatticePolytope::from_points(int ambient_dim, std::vector<LatticePoint> points) {
    if (ambient_dim < 1 || ambient_dim > 3)
        throw ShapeError("LatticePolytope", "ambient dimension must be 1, 2 or 3");
    if (points.empty()) throw ShapeError("LatticePolytope", "empty point set");
    for (const auto& p : points) {
        if (static_cast<int>(p.size()) != ambient_dim)
            throw ShapeError("LatticePolytope", "point dimension mismatch");
    }
    points = dedup(std::move(points));
    const int adim = affine_dimension(points, ambient_dim);
    std::vector<LatticePoint> verts;
    if (adim == 0) {
        verts.push_back(points.front());
    } else if (adim == 1) {
        // Points lie on a line; lexicographic order is monotone along it.
        verts.push_back(points.front());
        verts.push_back(points.back());
    } else if (ambient_dim == 2) {
        verts = chain2(std::move(points));
    } else if (adim == 2) {
        // Planar set in 3-space: project out a coordinate where the plane
        // normal does not vanish, hull in 2d, and pull the originals back.
        LatticePoint normal;
        for (size_t i = 1; i < points.size() && normal.empty(); ++i) {
            for (size_t j = i + 1; j < points.size(); ++j) {
                LatticePoint n = cross3(sub(points[i], points[0]), sub(points[j], points[0]));
                if (!is_zero(n)) {
                    normal = std::move(n);
                    break;
                }
            }
        }
        verts = facet_cycle(points, Facet{normal, dot(normal, points[0])});
    } else {
        verts = hull3(points);
    }
    std::sort(verts.begin(), verts.end());
    return LatticePolytope(ambient_dim, std::move(verts));
}

int LatticePolytope::affine_dim() const { return affine_dimension(vertices_, ambient_dim_); }

LatticePolytope newton_polytope(const MultiPoly& p) {
    if (p.is_zero()) throw DomainError("newton_polytope", "zero polynomial has no Newton polytope");
    if (p.num_vars() > 3)
        throw ShapeError("newton_polytope", "ambient dimension must be 1, 2 or 3");
    std::vector<LatticePoint> pts;
    pts.reserve(p.terms().size());
    for (const auto& [exps, coeff] : p.terms()) {
        (void)coeff;
        pts.push_back(exps);
    }
    return LatticePolytope::from_points(p.num_vars(), std::move(pts));
}

LatticePolytope minkowski_sum(const LatticePolytope& P, const LatticePolytope& Q) {
    if (P.ambient_dim() != Q.ambient_dim())
        throw ShapeError("minkowski_sum", "ambient dimension mismatch");
    std::vector<LatticePoint> sums;
    sums.reserve(P.vertices().size() * Q.vertices().size());
    for (const auto& p : P.vertices()) {
        for (const auto& q : Q.vertices()) {
            LatticePoint s(p.size());
            for (size_t i = 0; i < p.size(); ++i) s[i] = p[i] + q[i];
            sums.push_back(std::move(s));
        }
    }
    return LatticePolytope::from_points(P.ambient_dim(), std::move(sums));
}

long long normalized_volume(const LatticePolytope& P) {
    const int n = P.ambient_dim();
    if (P.affine_dim() < n) return 0;
    const auto& vs = P.vertices();
    if (n == 1) return vs.back()[0] - vs.front()[0];
    if (n == 2) {
        const std::vector<LatticePoint> cycle = chain2(vs);
        long long twice_area = 0;
        for (size_t i = 0; i < cycle.size(); ++i)
            twice_area += cross2(cycle[i], cycle[(i + 1) % cycle.size()]);
        return twice_area;
    }
    // Fan of tetrahedra from a fixed vertex over every facet triangulation.
    const LatticePoint& o = vs.front();
    long long six_vol = 0;
    for (const Facet& f : facets3(vs)) {
        const std::vector<LatticePoint> cycle = facet_cycle(vs, f);
        long long part = 0;
        for (size_t i = 1; i + 1 < cycle.size(); ++i)
            part += det3(sub(cycle[0], o), sub(cycle[i], o), sub(cycle[i + 1], o));
        six_vol += std::abs(part);
    }
    return six_vol;
}

long long mixed_volume(const std::vector<LatticePolytope>& Ps) {
    const int n = static_cast<int>(Ps.size());
    if (n < 1 || n > 3) throw ShapeError("mixed_volume", "need 1, 2 or 3 polytopes");
    for (const auto& P : Ps) {
        if (P.ambient_dim() != n)
            throw ShapeError("mixed_volume", "polytope count must equal the ambient dimension");
    }
    long long factorial = 1;
    for (int i = 2; i <= n; ++i) factorial *= i;
    long long acc = 0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        LatticePolytope sum = LatticePolytope::from_points(n, {LatticePoint(n, 0)});
        int size = 0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                sum = minkowski_sum(sum, Ps[i]);
                ++size;
            }
        }
        const long long sign = ((n - size) % 2 == 0) ? 1 : -1;
        acc += sign * normalized_volume(sum);
    }
    if (acc % factorial != 0)
        throw DomainError("mixed_volume", "inclusion-exclusion sum is not divisible by n!");
    return acc / factorial;
}

bool contains_point(const LatticePolytope& P, const LatticePoint& q) {
    if (static_cast<int>(q.size()) != P.ambient_dim())
        throw ShapeError("contains_point", "point dimension mismatch");
    std::vector<LatticePoint> pts = P.vertices();
    pts.push_back(q);
    return LatticePolytope::from_points(P.ambient_dim(), std::move(pts)) == P;
}

std::vector<LatticePoint> lattice_points(const LatticePolytope& P) {
    const int n = P.ambient_dim();
    LatticePoint lo = P.vertices().front(), hi = lo;
    for (const auto& v : P.vertices()) {
        for (int i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    }
    std::vector<LatticePoint> out;
    LatticePoint cur = lo;
    for (;;) {
        if (contains_point(P, cur)) out.push_back(cur);
        int i = 0;
        while (i < n && cur[i] == hi[i]) {
            cur[i] = lo[i];
            ++i;
        }
        if (i == n) break;
        ++cur[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool strict_interior_contains(const LatticePolytope& P, const LatticePolytope& Q) {
    if (P.ambient_dim() != Q.ambient_dim())
        throw ShapeError("strict_interior_contains", "ambient dimension mismatch");
    const int n = P.ambient_dim();
    if (P.affine_dim() < n)
        throw DomainError("strict_interior_contains", "polytope has empty interior");
    const auto& qs = Q.vertices();
    if (n == 1) {
        const int lo = P.vertices().front()[0];
        const int hi = P.vertices().back()[0];
        return std::all_of(qs.begin(), qs.end(),
                           [&](const LatticePoint& q) { return lo < q[0] && q[0] < hi; });
    }
    if (n == 2) {
        const std::vector<LatticePoint> cycle = chain2(P.vertices());
        for (size_t i = 0; i < cycle.size(); ++i) {
            const LatticePoint edge = sub(cycle[(i + 1) % cycle.size()], cycle[i]);
            for (const auto& q : qs) {
                if (cross2(edge, sub(q, cycle[i])) <= 0) return false;
            }
        }
        return true;
    }
    for (const Facet& f : facets3(P.vertices())) {
        for (const auto& q : qs) {
            if (dot(f.normal, q) >= f.offset) return false;
        }
    }
    return true;
}

} // namespace abeltrace
