// Acceptance gate: one line per criterion, non-zero exit when any criterion fails.
#include "steklov/verify.hpp"

#include <cstdio>
#include <string>

int main(int argc, char** argv) {
    const std::string suite = argc > 1 ? argv[1] : "all";
    int failed = 0;
    for (const auto& s : steklov::acceptance_suites()) {
        if (suite != "all" && suite != s.name)
            continue;
        const auto r = s.run();
        std::printf("%s\n", steklov::format_result(r).c_str());
        std::fflush(stdout);
        failed += r.pass ? 0 : 1;
    }
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
