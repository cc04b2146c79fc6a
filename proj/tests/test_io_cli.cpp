#include "doctest.h"
#include "helpers.hpp"
#include "problems.hpp"

#include "abeltrace/commands.hpp"
#include "abeltrace/errors.hpp"
#include "abeltrace/problem_io.hpp"

#include <filesystem>
#include <fstream>
#include <string>

using namespace abeltrace;

namespace {

std::string data(const char* name) { return std::string(ABELTRACE_DATA_DIR "/") + name; }

std::string tmp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

bool mentions(const std::string& report, const char* needle) {
    return report.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("problem files round-trip the fixture problems") {
    const ProblemFile file = read_problem_file(data("circle.json"));
    const TraceProblem rebuilt = golden::circle_problem();
    CHECK(file.problem.ambient_dim() == 2);
    CHECK(file.problem.num_germs() == 2);
    CHECK_FALSE(file.class_spec.has_value());
    for (int g = 0; g < 2; ++g) {
        const GermGraph& a = file.problem.germs()[g];
        const GermGraph& b = rebuilt.germs()[g];
        CHECK(a.graph_coordinate() == b.graph_coordinate());
        CHECK(a.truncation_order() == b.truncation_order());
        CHECK(testutil::poly_rel_err(a.series(), b.series()) < 1e-15);
    }

    const ProblemFile with_spec = read_problem_file(data("p1xp1.json"));
    REQUIRE(with_spec.class_spec.has_value());
    CHECK(with_spec.class_spec->divisors.size() == 2);
    CHECK(with_spec.class_spec->alpha_polytope ==
          LatticePolytope::from_points(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
}

TEST_CASE("problem file rejection messages name the offending field") {
    const std::string path = tmp_path("abeltrace_bad_problem.json");
    {
        std::ofstream out(path);
        out << R"({"dimension": 2, "family": {"supports": [[[1,0],[0,1]]]}})";
    }
    try {
        read_problem_file(path);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(mentions(e.what(), "family"));
        CHECK(mentions(e.what(), "base"));
    }

    {
        std::ofstream out(path);
        out << R"({"dimension": 2)";
    }
    CHECK_THROWS_AS(read_problem_file(path), ParseError);
    CHECK_THROWS_AS(read_problem_file(tmp_path("abeltrace_missing_file.json")), ParseError);
}

TEST_CASE("tolerance overrides take precedence over the file") {
    CliOverrides over;
    over.seed = 99;
    over.grid = 7;
    const ProblemFile file = read_problem_file(data("circle.json"), over);
    CHECK(file.problem.tolerances().seed == 99);
    CHECK(file.problem.tolerances().grid_size == 7);
}

TEST_CASE("cmd_trace_test classifies the golden problems") {
    const CommandResult pos = cmd_trace_test(data("circle.json"));
    CHECK(pos.exit_code == 0);
    CHECK(mentions(pos.report, "\"verdict\": \"affine\""));

    const CommandResult neg = cmd_trace_test(data("exp_germ.json"));
    CHECK(neg.exit_code == 2);
    CHECK(mentions(neg.report, "\"verdict\": \"not-affine\""));

    const CommandResult bad = cmd_trace_test(data("malformed.json"));
    CHECK(bad.exit_code == 1);
    CHECK(mentions(bad.report, "germs"));
}

TEST_CASE("cmd_trace_test reports are deterministic") {
    const CommandResult a = cmd_trace_test(data("circle.json"));
    const CommandResult b = cmd_trace_test(data("circle.json"));
    CHECK(a.report == b.report);

    CliOverrides over;
    over.seed = 99;
    const CommandResult c = cmd_trace_test(data("circle.json"), over);
    CHECK(mentions(c.report, "\"seed\": 99"));
}

TEST_CASE("cmd_interpolate recovers the circle and round-trips its output") {
    const std::string out = tmp_path("abeltrace_circle_Q.json");
    const CommandResult r = cmd_interpolate(data("circle.json"), out);
    REQUIRE(r.exit_code == 0);
    CHECK(mentions(r.report, "\"bernstein_degree\": 2"));

    const MultiPoly Q = read_polynomial_file(out);
    CHECK(testutil::poly_rel_err(Q, golden::circle_poly()) < 1e-6);

    // byte-identical after one more write/read cycle
    const std::string again = tmp_path("abeltrace_circle_Q2.json");
    write_polynomial_file(again, Q);
    CHECK(slurp(out) == slurp(again));
}

TEST_CASE("cmd_interpolate handles the trivial and negative fixtures") {
    const std::string out = tmp_path("abeltrace_const_Q.json");
    const CommandResult triv = cmd_interpolate(data("constant_germ.json"), out);
    REQUIRE(triv.exit_code == 0);
    MultiPoly expected(2);
    expected.set_coefficient({0, 1}, 1.0);
    expected.set_coefficient({0, 0}, -5.0);
    CHECK(testutil::poly_rel_err(read_polynomial_file(out), expected) < 1e-9);

    const CommandResult neg =
        cmd_interpolate(data("exp_germ.json"), tmp_path("abeltrace_exp_Q.json"));
    CHECK(neg.exit_code == 2);
    CHECK(mentions(neg.report, "characteristic_poly"));
    CHECK(mentions(neg.report, "FitResidualExceeded"));
}

TEST_CASE("cmd_class_check certifies and rejects") {
    const CommandResult good = cmd_class_check(data("p1xp1.json"));
    CHECK(good.exit_code == 0);
    CHECK(mentions(good.report, "\"positive\": true"));

    const CommandResult bad = cmd_class_check(data("p1xp1_wrong_class.json"));
    CHECK(bad.exit_code == 2);
    CHECK(mentions(bad.report, "\"positive\": false"));

    const CommandResult conic = cmd_class_check(data("conic_p2.json"));
    CHECK(conic.exit_code == 0);
    CHECK(mentions(conic.report, "\"observed\": 2"));
    CHECK(mentions(conic.report, "\"predicted\": 2"));

    const CommandResult missing = cmd_class_check(data("circle.json"));
    CHECK(missing.exit_code == 1);
    CHECK(mentions(missing.report, "class_spec"));
}

TEST_CASE("cmd_residue_check prints the value and the vanishing prediction") {
    const CommandResult toric = cmd_residue_check(data("residue_toric.json"));
    CHECK(toric.exit_code == 0);
    CHECK(mentions(toric.report, "predicted: vanishing"));

    const CommandResult plain = cmd_residue_check(data("residue_plain.json"));
    CHECK(plain.exit_code == 0);
    CHECK(mentions(plain.report, "predicted: none"));
}

TEST_CASE("cmd_mixed_volume prints the integer") {
    const CommandResult r = cmd_mixed_volume(data("mv_conics.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.report == "4\n");
}
