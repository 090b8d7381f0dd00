// Runs the acceptance battery and prints one line per criterion.

#include "rht/verification.hpp"

#include <cstdio>
#include <string>
#include <vector>

int main(int argc, char** argv)
{
    rht::VerifyOptions options;
    for (int i = 1; i < argc; ++i)
        options.only.emplace_back(argv[i]);
    const auto results = rht::run_verification(options);
    int failed = 0;
    for (const auto& r : results) {
        std::printf("[%s] %2d %-15s %8.3fs / %3.0fs  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.key.c_str(),
                    r.seconds, r.limit, r.detail.c_str());
        failed += !r.pass;
    }
    std::printf("%zu/%zu criteria passed\n", results.size() - static_cast<std::size_t>(failed), results.size());
    return failed == 0 ? 0 : 1;
}
