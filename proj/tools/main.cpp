#include "dgim/analyze.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string out;
    int code = dgim::run_cli(args, out);
    if (code == 0) std::cout << out;
    else std::cerr << out;
    return code;
}
