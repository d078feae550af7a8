#pragma once

#include <string>
#include <vector>

#include "polysinc/problem.hpp"

namespace polysinc {

// One benchmark problem with a closed-form exact solution, together with
// the settings and reference figures used for side-by-side comparison.
struct BenchmarkEntry {
    std::string id;
    std::string description;
    ProblemSpec spec;
    int m = 5;              // Sinc points per partition (2N+1)
    double eps_reference = 1e-6;   // stopping threshold used in the reference runs
    double eps_default = 1e-6; // double-precision default (relaxed where needed)
    int ref_kappa = 0;
    long long ref_points = 0;  // reference run total point count
    double ref_error = 0.0;
    std::string ref_error_norm;  // "l2" or "sup"
    std::string notes;             // layer location, if any
};

// Registered benchmark, by id.  Throws std::invalid_argument listing the
// known ids for an unknown one.
BenchmarkEntry builtin(const std::string& id);

std::vector<std::string> builtin_ids();

}  // namespace polysinc
