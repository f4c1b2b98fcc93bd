#include <iostream>

#include "uf/acceptance.hpp"

int main() {
    const auto results = uf::run_acceptance(std::cout);
    bool all_pass = true;
    for (const auto& r : results) all_pass = all_pass && r.pass;
    std::cout << (all_pass ? "acceptance: all criteria passed" : "acceptance: FAILURES above")
              << std::endl;
    return all_pass ? 0 : 1;
}
