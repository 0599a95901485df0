#include "fperr/cli.hpp"

int main(int argc, char** argv) {
    return fperr::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
