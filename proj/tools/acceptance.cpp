#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "ltlab/acceptance.hpp"
#include "ltlab/error.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria, one line per criterion", "acceptance"};
    ltlab::AcceptanceOptions opt;
    opt.root = ltlab::default_root();
    bool update = false;
    app.add_option("--seed", opt.seed, "random seed");
    app.add_option("--root", opt.root, "repository root (configs/, tests/golden/)");
    app.add_option("--only", opt.only, "criterion numbers to run");
    app.add_flag("--write-golden", update, "regenerate the golden CLI outputs and exit");
    CLI11_PARSE(app, argc, argv);

    if (update) {
        ltlab::write_golden(opt.root);
        std::cout << "golden files written to " << opt.root << "/tests/golden\n";
        return 0;
    }
    bool all = true;
    for (const auto& r : ltlab::run_acceptance(opt)) {
        all = all && r.pass;
        std::printf("[%s] %2d %-34s %5d checks %3d failed %7.1fs\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.checks,
                    r.failures, r.seconds);
        for (const auto& n : r.notes) std::printf("       %s\n", n.c_str());
    }
    return all ? 0 : 1;
}
