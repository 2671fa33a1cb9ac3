// Runs every acceptance criterion and prints one line per criterion.
// Arguments: --quick skips the long simulations; integers select criteria.
#include <cstdlib>
#include <iostream>
#include <string>

#include "verify/acceptance.hpp"

int main(int argc, char** argv) {
    rotabouss::verify::AcceptanceOptions opts;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--quick")
            opts.quick = true;
        else
            opts.only.push_back(std::stoi(a));
    }
    const auto results = rotabouss::verify::run_acceptance(opts);
    std::cout << "acceptance criteria\n";
    rotabouss::verify::print_table(std::cout, results);
    return rotabouss::verify::all_passed(results) ? EXIT_SUCCESS : EXIT_FAILURE;
}
