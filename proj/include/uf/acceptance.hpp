#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace uf {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail; // counts / witness stats / failure description
    double seconds = 0.0;
};

/// Runs the acceptance suite (criteria 1..11; a non-empty `only` restricts
/// the run), printing one PASS/FAIL line per criterion to `out`.
std::vector<CriterionResult> run_acceptance(std::ostream& out, const std::set<int>& only = {});

} // namespace uf
