#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bbring::cli {

enum ExitCode : int {
    kOk = 0,
    kVerifyDivergence = 1,
    kParseError = 2,
    kPreconditionError = 3,
    kLowConfidence = 4,
};

/// One command per call; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Splits an element list on whitespace or '|' outside brackets.
std::vector<std::string> split_element_list(const std::string& text);

struct BenchRow {
    unsigned k = 0;
    std::uint64_t add_count = 0;
    std::uint64_t mul_count = 0;
    std::uint64_t brute_force = 0;  // verification-channel queries of full enumeration
};

struct BenchReport {
    std::vector<BenchRow> rows;
    double exponent = 0.0;  // least-squares slope of log(total) against log(k)
};

BenchReport bench_queries(const std::string& family, unsigned kmin, unsigned kmax, std::uint64_t seed,
                          const std::string& backend, double epsilon);

}  // namespace bbring::cli
