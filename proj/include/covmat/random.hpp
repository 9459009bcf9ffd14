#pragma once

#include "covmat/core.hpp"
#include "covmat/dynamic.hpp"

#include <cstdint>
#include <random>

namespace covmat {

using Rng = std::mt19937_64;

/// Labels x1..xn, blocks B1..Bm. Each block draws members with probability
/// `density` (at least one member); uncovered objects are then dropped into a
/// random block so the result is a covering.
BlockFamily random_covering(std::size_t n, std::size_t m, Rng& rng, double density = 0.3);

/// Random partition of x1..xn into at most `max_classes` classes.
BlockFamily random_partition(std::size_t n, std::size_t max_classes, Rng& rng);

ObjectSet random_subset(std::size_t n, Rng& rng, double density = 0.5);

enum class DeltaKind { AE, DE, AO, DO, Move, Isolate };

/// A delta of the given kind that is valid for `family`, or nullopt when the
/// family admits none (e.g. DE on a one-block family). Fresh names are derived
/// from `serial`, which is incremented. `batch` sizes AO/DO deltas.
std::optional<Delta> random_delta(const BlockFamily& family, DeltaKind kind, Rng& rng,
                                  std::uint64_t& serial, std::size_t batch = 1);

/// Any valid delta, kind chosen uniformly among those possible.
Delta random_any_delta(const BlockFamily& family, Rng& rng, std::uint64_t& serial);

} // namespace covmat
