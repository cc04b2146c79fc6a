#ifndef ABELTRACE_PROBLEM_IO_HPP
#define ABELTRACE_PROBLEM_IO_HPP

#include "abeltrace/reconstruct.hpp"
#include "abeltrace/residues.hpp"
#include "abeltrace/traces.hpp"

#include <optional>
#include <string>
#include <vector>

namespace abeltrace {

/// Command-line overrides applied on top of the tolerance block of a problem
/// file. Absent fields keep the file (or default) values.
struct CliOverrides {
    std::optional<double> tol;   // fit_tol
    std::optional<int> grid;     // grid_size
    std::optional<int> steps;    // continuation waypoints
    std::optional<unsigned long long> seed;
};

/// A parsed problem file: the trace problem plus the optional class spec.
struct ProblemFile {
    TraceProblem problem;
    std::optional<ClassSpec> class_spec;
};

/// A parsed residue-check file.
struct ResidueFile {
    MultiPoly numerator;
    std::vector<MultiPoly> equations;
    bool toric = false;
};

ProblemFile read_problem_file(const std::string& path, const CliOverrides& over = {});
ResidueFile read_residue_file(const std::string& path);
std::vector<LatticePolytope> read_polytope_file(const std::string& path);

/// Exponent→coefficient pairs, losslessly round-trippable.
void write_polynomial_file(const std::string& path, const MultiPoly& p);
MultiPoly read_polynomial_file(const std::string& path);

} // namespace abeltrace

#endif
