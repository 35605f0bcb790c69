#ifndef ABCONE_ACCEPTANCE_HPP
#define ABCONE_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace abcone::acceptance {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;  // headline metric, human-readable
};

// Runs every built-in verification criterion.
std::vector<CriterionResult> run_all();

// Prints one PASS/FAIL line per criterion; returns the number of failures.
int run_and_report(std::ostream& os);

}  // namespace abcone::acceptance

#endif
