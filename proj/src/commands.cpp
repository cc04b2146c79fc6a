#include "abeltrace/commands.hpp"
#include "abeltrace/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>

namespace abeltrace {

namespace {

using nlohmann::json;

json poly_terms_json(const MultiPoly& p) {
    json terms = json::array();
    for (const auto& [exps, coeff] : p.terms()) {
        json term;
        term["exponents"] = exps;
        term["value"] = {coeff.real(), coeff.imag()};
        terms.push_back(std::move(term));
    }
    return terms;
}

std::string render(const json& body) { return body.dump(2) + "\n"; }

/// Negatives are results: fit/validation failures that state "the criterion
/// does not hold" exit 2, everything operational exits 1.
int error_exit_code(const Error& e) {
    if (e.reason() == "FitResidualExceeded" || e.reason() == "NoPolynomialFit" ||
        e.reason() == "ValidationFailed" || e.reason() == "DegreeMismatch")
        return 2;
    return 1;
}

CommandResult error_result(const std::string& command, const Error& e) {
    json body;
    body["command"] = command;
    body["error"]["stage"] = e.stage();
    body["error"]["reason"] = e.reason();
    body["error"]["message"] = e.what();
    return CommandResult{error_exit_code(e), render(body)};
}

CommandResult plain_failure(const std::string& command, const std::exception& e) {
    json body;
    body["command"] = command;
    body["error"]["stage"] = command;
    body["error"]["reason"] = "Unexpected";
    body["error"]["message"] = e.what();
    return CommandResult{1, render(body)};
}

} // namespace

CommandResult cmd_trace_test(const std::string& path, const CliOverrides& over) {
    try {
        const ProblemFile file = read_problem_file(path, over);
        const TraceProblem& prob = file.problem;
        const int n = prob.ambient_dim();

        std::vector<MultiPoly> coords;
        for (int i = 0; i < n; ++i) coords.push_back(MultiPoly::variable(n, i));
        const double radius = prob.tolerances().grid_radius > 0.0
                                  ? prob.tolerances().grid_radius
                                  : probe_grid_radius(prob);
        const std::vector<FitVerdict> verdicts =
            affineness_test(prob, coords, radius, prob.tolerances().grid_size);

        bool all_affine = true;
        json rows = json::array();
        for (int i = 0; i < n; ++i) {
            const FitVerdict& v = verdicts[i];
            all_affine = all_affine && v.is_within_degree;
            json row;
            row["coordinate"] = i;
            row["affine"] = v.is_within_degree;
            row["residual"] = v.residual;
            row["fitted_form"] = poly_terms_json(v.fitted);
            rows.push_back(std::move(row));
        }

        json body;
        body["command"] = "trace-test";
        body["verdict"] = all_affine ? "affine" : "not-affine";
        body["coordinates"] = std::move(rows);
        body["grid_radius"] = radius;
        body["grid_size"] = prob.tolerances().grid_size;
        body["fit_tol"] = prob.tolerances().fit_tol;
        body["seed"] = prob.tolerances().seed;
        return CommandResult{all_affine ? 0 : 2, render(body)};
    } catch (const Error& e) {
        return error_result("trace-test", e);
    } catch (const std::exception& e) {
        return plain_failure("trace-test", e);
    }
}

CommandResult cmd_interpolate(const std::string& path, const std::string& out_path,
                              const CliOverrides& over) {
    try {
        const ProblemFile file = read_problem_file(path, over);
        const InterpolationResult result = interpolate(file.problem);
        write_polynomial_file(out_path, result.Q);

        json body;
        body["command"] = "interpolate";
        body["output"] = out_path;
        body["bernstein_degree"] = result.bernstein_degree;
        body["germ_residual"] = result.max_germ_residual;
        body["char_poly_fit_residual"] = result.char_poly.max_fit_residual;
        body["degree"] = result.char_poly.N;
        json u = json::array();
        for (const cplx& c : result.u.coefficients) u.push_back({c.real(), c.imag()});
        body["u"] = std::move(u);
        body["seed"] = file.problem.tolerances().seed;
        body["polynomial"] = poly_terms_json(result.Q);
        return CommandResult{0, render(body)};
    } catch (const Error& e) {
        return error_result("interpolate", e);
    } catch (const std::exception& e) {
        return plain_failure("interpolate", e);
    }
}

CommandResult cmd_class_check(const std::string& path, const CliOverrides& over) {
    try {
        const ProblemFile file = read_problem_file(path, over);
        if (!file.class_spec)
            throw ParseError(path + ": class-check needs a class_spec block");
        const InterpolationResult result = interpolate(file.problem);
        const ClassReport report = class_certificate(file.problem, result, *file.class_spec);

        json rows = json::array();
        for (size_t j = 0; j < report.divisors.size(); ++j) {
            const DivisorReport& d = report.divisors[j];
            json row;
            row["divisor"] = j;
            row["observed"] = d.observed;
            row["predicted"] = d.predicted;
            row["matches"] = d.matches;
            row["retries"] = d.retries;
            rows.push_back(std::move(row));
        }
        json body;
        body["command"] = "class-check";
        body["positive"] = report.positive;
        body["divisors"] = std::move(rows);
        body["bernstein_degree"] = result.bernstein_degree;
        body["seed"] = file.problem.tolerances().seed;
        return CommandResult{report.positive ? 0 : 2, render(body)};
    } catch (const Error& e) {
        return error_result("class-check", e);
    } catch (const std::exception& e) {
        return plain_failure("class-check", e);
    }
}

CommandResult cmd_residue_check(const std::string& path) {
    try {
        const ResidueFile file = read_residue_file(path);
        const SquareSystem system(file.equations);
        const cplx residue = residue_sum(file.numerator, system, file.toric);
        const bool vanishing = khovanskii_predict(file.numerator, file.equations);

        char line[160];
        std::snprintf(line, sizeof line, "residue: %.12g %+.12gi\n", residue.real(),
                      residue.imag());
        std::string report(line);
        report += vanishing ? "predicted: vanishing\n" : "predicted: none\n";

        const bool violated = file.toric && vanishing && std::abs(residue) > 1e-10;
        return CommandResult{violated ? 2 : 0, std::move(report)};
    } catch (const Error& e) {
        return error_result("residue-check", e);
    } catch (const std::exception& e) {
        return plain_failure("residue-check", e);
    }
}

CommandResult cmd_mixed_volume(const std::string& path) {
    try {
        const std::vector<LatticePolytope> polys = read_polytope_file(path);
        const long long mv = mixed_volume(polys);
        return CommandResult{0, std::to_string(mv) + "\n"};
    } catch (const Error& e) {
        return error_result("mixed-volume", e);
    } catch (const std::exception& e) {
        return plain_failure("mixed-volume", e);
    }
}

} // namespace abeltrace
