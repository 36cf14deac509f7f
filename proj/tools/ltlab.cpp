#include <iostream>
#include <string>
#include <vector>

#include "ltlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string out;
    int status = ltlab::run_cli(args, out);
    std::cout << out;
    return status;
}
