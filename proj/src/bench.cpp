#include "covmat/bench.hpp"

#include "covmat/charmat.hpp"
#include "covmat/dynamic.hpp"
#include "covmat/error.hpp"
#include "covmat/random.hpp"

#include <chrono>
#include <cstdio>
#include <string>

namespace covmat {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct KindSpec {
    DeltaKind kind;
    const char* name;
};

constexpr KindSpec kKinds[] = {
    {DeltaKind::AE, "AE"},     {DeltaKind::DE, "DE"},     {DeltaKind::AO, "AO"},
    {DeltaKind::DO, "DO"},     {DeltaKind::Move, "CA-move"}, {DeltaKind::Isolate, "CA-isolate"},
};

bool same_as_naive(const CharCache& cache, const NaiveMatrices& naive) {
    const std::size_t n = naive.n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (cache.gamma().get(i, j) != (naive.gamma[i * n + j] != 0) ||
                cache.pi().get(i, j) != naive.pi[i * n + j])
                return false;
    return true;
}

} // namespace

NaiveMatrices naive_characteristic_matrices(const BlockFamily& family) {
    const std::size_t n = family.object_count();
    const std::size_t m = family.block_count();
    if (m == 0)
        throw PreconditionError("family has no blocks");
    std::vector<std::uint8_t> member(n * m);
    for (std::size_t k = 0; k < m; ++k)
        family.members(k).for_each_one([&](std::size_t i) { member[i * m + k] = 1; });

    NaiveMatrices out{n, std::vector<std::uint8_t>(n * n), std::vector<std::uint8_t>(n * n)};
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t* a = &member[i * m];
        for (std::size_t j = 0; j < n; ++j) {
            const std::uint8_t* b = &member[j * m];
            std::uint8_t g = 0;
            std::uint8_t p = 2;
            for (std::size_t k = 0; k < m; ++k) {
                g = static_cast<std::uint8_t>(g | (a[k] & b[k]));
                const auto term = static_cast<std::uint8_t>(b[k] + 1 - a[k]);
                p = term < p ? term : p;
            }
            out.gamma[i * n + j] = g;
            out.pi[i * n + j] = p;
        }
    }
    return out;
}

bool BenchReport::all_identical() const {
    if (!build_identical)
        return false;
    for (const auto& row : rows)
        if (!row.identical)
            return false;
    return true;
}

const BenchRow* BenchReport::find(const std::string& kind) const {
    for (const auto& row : rows)
        if (row.kind == kind)
            return &row;
    return nullptr;
}

BenchReport bench_incremental(std::size_t n, std::size_t m, std::size_t deltas,
                              std::uint64_t seed, std::size_t batch) {
    if (n == 0 || m == 0)
        throw PreconditionError("bench needs n >= 1 and m >= 1");
    BenchReport report;
    report.n = n;
    report.m = m;
    report.seed = seed;
    report.batch = batch;

    Rng rng(seed);
    const BlockFamily family = random_covering(n, m, rng);

    auto start = Clock::now();
    const CharCache base = build_cache(family);
    report.fast_build_ms = ms_since(start);
    start = Clock::now();
    const NaiveMatrices naive = naive_characteristic_matrices(family);
    report.naive_build_ms = ms_since(start);
    report.build_identical = same_as_naive(base, naive);

    std::uint64_t serial = 1;
    for (const auto& spec : kKinds) {
        BenchRow row;
        row.kind = spec.name;
        const std::size_t size =
            (spec.kind == DeltaKind::AO || spec.kind == DeltaKind::DO) ? batch : 1;
        // Each delta is applied to the base cache so every sample sees the same n and m.
        for (std::size_t r = 0; r < deltas; ++r) {
            const auto delta = random_delta(family, spec.kind, rng, serial, size);
            if (!delta)
                continue;
            start = Clock::now();
            const CharCache incremental = apply_delta(base, *delta);
            row.incremental_ms += ms_since(start);

            start = Clock::now();
            const CharCache rebuilt = build_cache(apply_to_family(family, *delta));
            row.rebuild_ms += ms_since(start);

            row.identical = row.identical && incremental == rebuilt;
            ++row.updates;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string format_report(const BenchReport& report) {
    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "n=%zu m=%zu seed=%llu batch=%zu\n", report.n, report.m,
                  static_cast<unsigned long long>(report.seed), report.batch);
    out += buf;
    std::snprintf(buf, sizeof buf, "build: fast %.3f ms, naive %.3f ms, x%.1f, %s\n",
                  report.fast_build_ms, report.naive_build_ms,
                  report.fast_build_ms > 0 ? report.naive_build_ms / report.fast_build_ms : 0.0,
                  report.build_identical ? "identical" : "MISMATCH");
    out += buf;
    std::snprintf(buf, sizeof buf, "%-11s %7s %14s %12s %8s  %s\n", "kind", "updates",
                  "incremental_ms", "rebuild_ms", "speedup", "result");
    out += buf;
    for (const auto& row : report.rows) {
        std::snprintf(buf, sizeof buf, "%-11s %7zu %14.3f %12.3f %8.1f  %s\n", row.kind.c_str(),
                      row.updates, row.incremental_ms, row.rebuild_ms, row.speedup(),
                      row.identical ? "identical" : "MISMATCH");
        out += buf;
    }
    return out;
}

std::vector<ScalingPoint> bench_scaling(const std::vector<std::size_t>& sizes, std::size_t m,
                                        std::size_t deltas, std::uint64_t seed) {
    std::vector<ScalingPoint> points;
    for (const std::size_t n : sizes) {
        Rng rng(seed + n);
        const BlockFamily family = random_covering(n, m, rng);
        ScalingPoint point;
        point.n = n;
        auto start = Clock::now();
        const CharCache base = build_cache(family);
        point.rebuild_ms = ms_since(start);

        std::uint64_t serial = 1;
        std::size_t done = 0;
        double total = 0;
        for (std::size_t r = 0; r < deltas; ++r) {
            const auto delta = random_delta(family, DeltaKind::Move, rng, serial);
            if (!delta)
                continue;
            start = Clock::now();
            const CharCache next = apply_delta(base, *delta);
            (void)next;
            total += ms_since(start);
            ++done;
        }
        point.move_ms = done ? total / static_cast<double>(done) : 0;
        points.push_back(point);
    }
    return points;
}

} // namespace covmat
