#include <omnikit/cli.hpp>

#include <iostream>

auto main(int argc, char * argv[]) -> int
{
    std::ios::sync_with_stdio(false);
    std::vector<std::string> args(argv + 1, argv + argc);
    return omnikit::cli::run(args, std::cin, std::cout, std::cerr);
}
