// Runs every acceptance criterion at full size and prints one line per criterion.
// Exit status is nonzero when any numbered criterion fails.
#include <cstdlib>
#include <iostream>
#include <string>
#include <string_view>

#include "jumpconv/io.hpp"
#include "jumpconv/suite.hpp"

int main(int argc, char** argv) {
    jumpconv::SuiteOptions opt;
    for (int i = 1; i < argc; ++i) {
        const std::string_view a = argv[i];
        if (a == "--quick") opt.quick = true;
        else if (a == "--out" && i + 1 < argc) opt.out_dir = argv[++i];
        else if (a == "--only" && i + 1 < argc) opt.only.emplace_back(argv[++i]);
        else if (a == "--threads" && i + 1 < argc) opt.threads = static_cast<unsigned>(std::stoul(argv[++i]));
        else {
            std::cerr << "usage: jumpconv_acceptance [--quick] [--out DIR] [--only PREFIX]... [--threads N]\n";
            return 2;
        }
    }
    const auto results = jumpconv::run_suite(opt);
    int primary = 0, failed = 0;
    for (const auto& r : results) {
        std::cout << jumpconv::format_result_line(r) << '\n';
        if (!r.supplementary) {
            ++primary;
            failed += !r.pass;
        }
    }
    std::cout << primary - failed << " of " << primary << " criterion lines passed\n";
    if (!opt.out_dir.empty()) jumpconv::write_file_atomic(opt.out_dir / "suite.csv", jumpconv::suite_csv(results));
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
