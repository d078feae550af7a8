#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "polysinc/problem.hpp"

namespace polysinc {

struct ProblemFileError : std::runtime_error {
    ProblemFileError(const std::string& msg, std::string key)
        : std::runtime_error("problem file: " + msg + " (key '" + key + "')"),
          key(std::move(key)) {}
    std::string key;
};

// Flat key-value problem definition:
//   kind = bvp | ivp1 | ivp2
//   interval = [a, b]
//   a(x), b(x), c(x), f(x)        BVP coefficients (expressions)
//   p(x), q(x)                    IVP1 coefficients
//   ya, yb, dya                   boundary / initial data (numbers)
//   multiplier, exact             optional expressions
// '#' starts a comment; blank lines ignored; values may be double-quoted.
struct ParsedProblem {
    ProblemSpec spec;
    std::map<std::string, std::string> definition;  // echo of the parsed keys
};

ParsedProblem parse_problem_text(const std::string& text);
ParsedProblem load_problem_file(const std::string& path);

}  // namespace polysinc
