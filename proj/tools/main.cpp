#include <vector>

#include "commands.hpp"

int main(int argc, char** argv) {
    return rotabouss::cli::dispatch(std::vector<std::string>(argv, argv + argc));
}
