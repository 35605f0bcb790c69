#include <fstream>
#include <iostream>
#include <vector>

#include "abcone/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    abcone::cli::RunConfig cfg;
    try {
        cfg = abcone::cli::parse_args(args);
    } catch (const abcone::cli::UsageError& e) {
        (e.exit_code == 0 ? std::cout : std::cerr) << e.message;
        return e.exit_code;
    }
    if (!cfg.out_path.empty()) {
        std::ofstream file(cfg.out_path);
        if (!file) {
            std::cerr << "cannot open output file: " << cfg.out_path << "\n";
            return 1;
        }
        return abcone::cli::run(cfg, file, std::cerr);
    }
    return abcone::cli::run(cfg, std::cout, std::cerr);
}
