// Runs every criterion, or the one named on the command line, one verdict line each.
#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include "criteria.hpp"

int main(int argc, char** argv) {
    using zxi::acceptance::criteria;
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    int failures = 0, ran = 0;
    for (const auto& c : criteria()) {
        if (only != 0 && c.id != only) continue;
        ++ran;
        zxi::acceptance::Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << o.detail
                  << "]" << std::endl;
        if (!o.pass) ++failures;
    }
    if (ran == 0) {
        std::cerr << "no criterion " << only << '\n';
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
