#ifndef QLH_CASES_HPP
#define QLH_CASES_HPP

#include "qlh/report.hpp"

namespace qlh {

struct CaseGenerator {
    std::string label;  // the listed name: X1..X8
    std::string anchor;
    std::string doc;    // GeneratorDoc JSON
};

struct CaseSolution {
    std::string label;
    std::string anchor;
    std::string doc;    // SolutionDoc JSON
};

struct CaseAnsatz {
    std::string label;
    std::string anchor;
    std::string alpha, beta, gamma;
};

struct CaseEntry {
    std::string id;     // "3.1", "3.2", "3.3", "W0"
    std::string anchor;
    std::string problem_doc;
    PdeSpec spec;
    std::vector<CaseGenerator> generators;
    std::vector<CaseSolution> solutions;
    std::vector<CaseAnsatz> ansatzes;
    std::vector<std::string> expected_constraints; // over alpha, beta, gamma
    std::string conserved_eq_label; // "eq (32)".."eq (34)"; empty skips variants
};

// The three studied cases plus the W0 wave sanity fixture.
const std::vector<CaseEntry>& builtin_cases();

// Runs every registered item (symmetry + classification per generator,
// solution checks, Noether constraint systems, conserved vectors and both
// printed/corrected component variants, the reduced ODE items and the
// determining-system comparison) and aggregates verdicts in registry order.
// Individual failures are data, not errors.
Report run_paper_suite();

} // namespace qlh

#endif
