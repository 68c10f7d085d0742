#include "acceptance_suite.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    signu::acceptance::Options opt;
    for (int i = 1; i < argc; ++i) opt.only.push_back(std::atoi(argv[i]));
    bool all = true;
    signu::acceptance::run(opt, [&](const signu::acceptance::CriterionResult& r) {
        std::cout << signu::acceptance::format_line(r) << std::endl;
        all = all && r.passed;
    });
    return all ? 0 : 1;
}
