#include <string>
#include <vector>

#include <ripsmap/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ripsmap::cli::run(std::move(args));
}
