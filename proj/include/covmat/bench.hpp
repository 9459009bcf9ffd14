#pragma once

#include "covmat/core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace covmat {

/// Scalar O(m * n^2) evaluation of both products straight from the membership
/// matrix, row-major n*n bytes each. Benchmark baseline and test oracle.
struct NaiveMatrices {
    std::size_t n = 0;
    std::vector<std::uint8_t> gamma;
    std::vector<std::uint8_t> pi;
};
NaiveMatrices naive_characteristic_matrices(const BlockFamily& family);

struct BenchRow {
    std::string kind;
    std::size_t updates = 0;
    double incremental_ms = 0;
    double rebuild_ms = 0;
    bool identical = true;

    double speedup() const { return incremental_ms > 0 ? rebuild_ms / incremental_ms : 0; }
};

struct BenchReport {
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    std::size_t batch = 0;
    double fast_build_ms = 0;
    double naive_build_ms = 0;
    bool build_identical = true;
    std::vector<BenchRow> rows;

    bool all_identical() const;
    const BenchRow* find(const std::string& kind) const;
};

/// For a seeded random covering of n objects and m blocks, times `deltas`
/// updates of each kind (incremental apply vs. rebuild of the updated family)
/// and the fast vs. naive construction. Every result is compared bitwise.
/// `batch` is the number of objects per AO/DO update.
BenchReport bench_incremental(std::size_t n, std::size_t m, std::size_t deltas,
                              std::uint64_t seed, std::size_t batch = 32);

std::string format_report(const BenchReport& report);

struct ScalingPoint {
    std::size_t n = 0;
    double rebuild_ms = 0;
    double move_ms = 0;
};

/// Rebuild and CA-move timings for each n at fixed m.
std::vector<ScalingPoint> bench_scaling(const std::vector<std::size_t>& sizes, std::size_t m,
                                        std::size_t deltas, std::uint64_t seed);

} // namespace covmat
