#include "abeltrace/problem_io.hpp"
#include "abeltrace/errors.hpp"

#include "json.hpp"

#include <fstream>
#include <utility>

namespace abeltrace {

namespace {

using nlohmann::json;

const json& member(const json& j, const char* key, const std::string& path) {
    if (!j.is_object())
        throw ParseError(path + ": expected an object");
    const auto it = j.find(key);
    if (it == j.end())
        throw ParseError(path + ": missing field '" + key + "'");
    return *it;
}

int read_int(const json& j, const std::string& path) {
    if (!j.is_number_integer())
        throw ParseError(path + ": expected an integer");
    return j.get<int>();
}

double read_real(const json& j, const std::string& path) {
    if (!j.is_number())
        throw ParseError(path + ": expected a number");
    return j.get<double>();
}

cplx read_complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(path + ": expected a [re, im] pair");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

CVec read_cvec(const json& j, const std::string& path) {
    if (!j.is_array())
        throw ParseError(path + ": expected an array of [re, im] pairs");
    CVec v;
    v.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i)
        v.push_back(read_complex(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

ExpVec read_exponents(const json& j, int nvars, const std::string& path) {
    if (!j.is_array() || static_cast<int>(j.size()) != nvars)
        throw ParseError(path + ": expected " + std::to_string(nvars) + " exponents");
    ExpVec e(nvars);
    for (int i = 0; i < nvars; ++i) {
        const std::string ep = path + "[" + std::to_string(i) + "]";
        const int v = read_int(j[i], ep);
        if (v < 0) throw ParseError(ep + ": exponents are non-negative");
        e[i] = v;
    }
    return e;
}

MultiPoly read_poly(const json& j, int nvars, const std::string& path) {
    if (!j.is_array())
        throw ParseError(path + ": expected an array of {exponents, value} terms");
    MultiPoly::TermMap terms;
    for (size_t t = 0; t < j.size(); ++t) {
        const std::string tp = path + "[" + std::to_string(t) + "]";
        ExpVec e = read_exponents(member(j[t], "exponents", tp), nvars, tp + ".exponents");
        terms[std::move(e)] = read_complex(member(j[t], "value", tp), tp + ".value");
    }
    return MultiPoly(nvars, std::move(terms));
}

LatticePolytope read_polytope(const json& j, int dim, const std::string& path) {
    if (!j.is_array() || j.empty())
        throw ParseError(path + ": expected a non-empty list of lattice vertices");
    std::vector<LatticePoint> pts;
    pts.reserve(j.size());
    for (size_t v = 0; v < j.size(); ++v) {
        const std::string vp = path + "[" + std::to_string(v) + "]";
        const json& jv = j[v];
        if (!jv.is_array() || static_cast<int>(jv.size()) != dim)
            throw ParseError(vp + ": expected " + std::to_string(dim) + " integer coordinates");
        LatticePoint p(dim);
        for (int i = 0; i < dim; ++i) p[i] = read_int(jv[i], vp + "[" + std::to_string(i) + "]");
        pts.push_back(std::move(p));
    }
    return LatticePolytope::from_points(dim, std::move(pts));
}

json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

ToleranceProfile read_tolerances(const json& doc, const CliOverrides& over) {
    ToleranceProfile tol;
    if (doc.contains("tolerances")) {
        const json& jt = doc.at("tolerances");
        if (!jt.is_object()) throw ParseError("tolerances: expected an object");
        if (jt.contains("fit_tol")) tol.fit_tol = read_real(jt["fit_tol"], "tolerances.fit_tol");
        if (jt.contains("transversality_threshold"))
            tol.transversality_threshold =
                read_real(jt["transversality_threshold"], "tolerances.transversality_threshold");
        if (jt.contains("steps")) tol.steps = read_int(jt["steps"], "tolerances.steps");
        if (jt.contains("grid_size"))
            tol.grid_size = read_int(jt["grid_size"], "tolerances.grid_size");
        if (jt.contains("grid_radius"))
            tol.grid_radius = read_real(jt["grid_radius"], "tolerances.grid_radius");
        if (jt.contains("germ_residual_tol"))
            tol.germ_residual_tol =
                read_real(jt["germ_residual_tol"], "tolerances.germ_residual_tol");
        if (jt.contains("lead_coeff_threshold"))
            tol.lead_coeff_threshold =
                read_real(jt["lead_coeff_threshold"], "tolerances.lead_coeff_threshold");
        if (jt.contains("seed")) {
            if (!jt["seed"].is_number_unsigned() && !jt["seed"].is_number_integer())
                throw ParseError("tolerances.seed: expected an integer");
            tol.seed = jt["seed"].get<unsigned long long>();
        }
    }
    if (over.tol) tol.fit_tol = *over.tol;
    if (over.grid) tol.grid_size = *over.grid;
    if (over.steps) tol.steps = *over.steps;
    if (over.seed) tol.seed = *over.seed;
    return tol;
}

} // namespace

ProblemFile read_problem_file(const std::string& path, const CliOverrides& over) {
    const json doc = load_document(path);
    const int n = read_int(member(doc, "dimension", path), "dimension");
    if (n < 2) throw ParseError("dimension: must be at least 2");

    const json& jfam = member(doc, "family", path);
    const json& jsup = member(jfam, "supports", "family");
    if (!jsup.is_array() || static_cast<int>(jsup.size()) != n - 1)
        throw ParseError("family.supports: expected one support list per curve equation (n-1)");
    std::vector<std::vector<ExpVec>> supports;
    for (size_t k = 0; k < jsup.size(); ++k) {
        const std::string sp = "family.supports[" + std::to_string(k) + "]";
        const json& jk = jsup[k];
        if (!jk.is_array() || jk.empty())
            throw ParseError(sp + ": expected a non-empty list of exponent vectors");
        std::vector<ExpVec> sk;
        for (size_t s = 0; s < jk.size(); ++s)
            sk.push_back(read_exponents(jk[s], n, sp + "[" + std::to_string(s) + "]"));
        supports.push_back(std::move(sk));
    }

    const json& jbase = member(jfam, "base", "family");
    ParamPoint base;
    base.a0 = read_cvec(member(jbase, "a0", "family.base"), "family.base.a0");
    const json& jco = member(jbase, "coefficients", "family.base");
    if (!jco.is_array() || static_cast<int>(jco.size()) != n - 1)
        throw ParseError("family.base.coefficients: expected one list per curve equation (n-1)");
    for (size_t k = 0; k < jco.size(); ++k)
        base.coeffs.push_back(
            read_cvec(jco[k], "family.base.coefficients[" + std::to_string(k) + "]"));
    CurveFamily family(n, std::move(supports), std::move(base));

    const json& jgerms = member(doc, "germs", path);
    if (!jgerms.is_array() || jgerms.empty())
        throw ParseError("germs: expected a non-empty array");
    std::vector<GermGraph> germs;
    for (size_t g = 0; g < jgerms.size(); ++g) {
        const std::string gp = "germs[" + std::to_string(g) + "]";
        const json& jg = jgerms[g];
        CVec base_point = read_cvec(member(jg, "base_point", gp), gp + ".base_point");
        const int coord = read_int(member(jg, "graph_coordinate", gp), gp + ".graph_coordinate");
        MultiPoly series = read_poly(member(jg, "series", gp), n - 1, gp + ".series");
        const int order = read_int(member(jg, "truncation_order", gp), gp + ".truncation_order");
        const double radius = read_real(member(jg, "radius", gp), gp + ".radius");
        germs.emplace_back(std::move(base_point), coord, std::move(series), order, radius);
    }

    const ToleranceProfile tol = read_tolerances(doc, over);
    TraceProblem problem(std::move(family), std::move(germs), tol);

    std::optional<ClassSpec> class_spec;
    if (doc.contains("class_spec")) {
        const json& jc = doc.at("class_spec");
        LatticePolytope alpha =
            read_polytope(member(jc, "alpha_polytope", "class_spec"), n, "class_spec.alpha_polytope");
        const json& jd = member(jc, "divisors", "class_spec");
        if (!jd.is_array() || jd.empty())
            throw ParseError("class_spec.divisors: expected a non-empty array");
        std::vector<DivisorSpec> divisors;
        for (size_t d = 0; d < jd.size(); ++d) {
            const std::string dp = "class_spec.divisors[" + std::to_string(d) + "]";
            divisors.push_back(
                DivisorSpec{read_polytope(member(jd[d], "polytope", dp), n, dp + ".polytope"),
                            read_poly(member(jd[d], "section", dp), n, dp + ".section")});
        }
        std::vector<LatticePolytope> bundles;
        if (jc.contains("bundle_polytopes")) {
            const json& jb = jc.at("bundle_polytopes");
            if (!jb.is_array()) throw ParseError("class_spec.bundle_polytopes: expected an array");
            for (size_t b = 0; b < jb.size(); ++b)
                bundles.push_back(read_polytope(
                    jb[b], n, "class_spec.bundle_polytopes[" + std::to_string(b) + "]"));
        }
        class_spec = ClassSpec{std::move(alpha), std::move(divisors), std::move(bundles)};
    }

    return ProblemFile{std::move(problem), std::move(class_spec)};
}

ResidueFile read_residue_file(const std::string& path) {
    const json doc = load_document(path);
    const int n = read_int(member(doc, "dimension", path), "dimension");
    if (n < 1) throw ParseError("dimension: must be at least 1");

    ResidueFile out{MultiPoly::zero(n), {}, false};
    out.numerator = read_poly(member(doc, "numerator", path), n, "numerator");
    const json& je = member(doc, "equations", path);
    if (!je.is_array() || static_cast<int>(je.size()) != n)
        throw ParseError("equations: expected one equation per variable");
    for (size_t k = 0; k < je.size(); ++k)
        out.equations.push_back(read_poly(je[k], n, "equations[" + std::to_string(k) + "]"));
    if (doc.contains("toric")) {
        if (!doc["toric"].is_boolean()) throw ParseError("toric: expected a boolean");
        out.toric = doc["toric"].get<bool>();
    }
    return out;
}

std::vector<LatticePolytope> read_polytope_file(const std::string& path) {
    const json doc = load_document(path);
    const int n = read_int(member(doc, "dimension", path), "dimension");
    const json& jp = member(doc, "polytopes", path);
    if (!jp.is_array() || jp.empty())
        throw ParseError("polytopes: expected a non-empty array of vertex lists");
    std::vector<LatticePolytope> out;
    for (size_t i = 0; i < jp.size(); ++i)
        out.push_back(read_polytope(jp[i], n, "polytopes[" + std::to_string(i) + "]"));
    return out;
}

void write_polynomial_file(const std::string& path, const MultiPoly& p) {
    json terms = json::array();
    for (const auto& [exps, coeff] : p.terms()) {
        json term;
        term["exponents"] = exps;
        term["value"] = {coeff.real(), coeff.imag()};
        terms.push_back(std::move(term));
    }
    json doc;
    doc["dimension"] = p.num_vars();
    doc["polynomial"] = std::move(terms);
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open file for writing");
    out << doc.dump(2) << "\n";
}

MultiPoly read_polynomial_file(const std::string& path) {
    const json doc = load_document(path);
    const int n = read_int(member(doc, "dimension", path), "dimension");
    if (n < 1) throw ParseError("dimension: must be at least 1");
    return read_poly(member(doc, "polynomial", path), n, "polynomial");
}

} // namespace abeltrace
