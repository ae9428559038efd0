#ifndef BRUSSELAB_ACCEPTANCE_HPP
#define BRUSSELAB_ACCEPTANCE_HPP

#include <ostream>
#include <string>
#include <vector>

namespace brusselab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the acceptance criteria with their fixed thresholds. The quick mode
// skips the Eckhaus map (8) and the long simulations (11). Each finished
// criterion is printed to `log` as one PASS/FAIL/SKIP line when given.
std::vector<CriterionResult> run_acceptance(bool quick, std::ostream* log = nullptr);

std::string format_result(const CriterionResult& r);

} // namespace brusselab

#endif
