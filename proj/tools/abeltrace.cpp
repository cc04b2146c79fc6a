#include "abeltrace/commands.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"decide and reconstruct algebraic interpolants of analytic germs"};
    app.require_subcommand(1);

    std::string path;
    std::string out_path = "interpolant.json";
    abeltrace::CliOverrides over;

    auto add_problem_options = [&](CLI::App* sub) {
        sub->add_option("file", path, "problem file")->required();
        sub->add_option("--tol", over.tol, "override the fit tolerance");
        sub->add_option("--grid", over.grid, "override the grid size per parameter axis");
        sub->add_option("--seed", over.seed, "override the random seed");
        sub->add_option("--steps", over.steps, "override the continuation step count");
    };

    CLI::App* trace = app.add_subcommand("trace-test", "test traces for affineness in a_0");
    add_problem_options(trace);

    CLI::App* interp = app.add_subcommand("interpolate", "reconstruct the interpolant");
    add_problem_options(interp);
    interp->add_option("-o,--output", out_path, "polynomial output file");

    CLI::App* cls = app.add_subcommand("class-check", "certify the Picard class");
    add_problem_options(cls);

    CLI::App* res = app.add_subcommand("residue-check", "evaluate a global residue sum");
    res->add_option("file", path, "residue file")->required();

    CLI::App* mv = app.add_subcommand("mixed-volume", "normalized mixed volume of polytopes");
    mv->add_option("file", path, "polytope file")->required();

    CLI11_PARSE(app, argc, argv);

    abeltrace::CommandResult result;
    if (trace->parsed()) result = abeltrace::cmd_trace_test(path, over);
    if (interp->parsed()) result = abeltrace::cmd_interpolate(path, out_path, over);
    if (cls->parsed()) result = abeltrace::cmd_class_check(path, over);
    if (res->parsed()) result = abeltrace::cmd_residue_check(path);
    if (mv->parsed()) result = abeltrace::cmd_mixed_volume(path);

    std::fputs(result.report.c_str(), stdout);
    return result.exit_code;
}
