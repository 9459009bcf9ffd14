#include "covmat/random.hpp"

#include "covmat/error.hpp"

#include <algorithm>
#include <string>

namespace covmat {

namespace {

std::size_t pick(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

std::vector<std::string> object_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        labels.push_back("x" + std::to_string(i + 1));
    return labels;
}

} // namespace

ObjectSet random_subset(std::size_t n, Rng& rng, double density) {
    std::bernoulli_distribution coin(density);
    ObjectSet out(n);
    for (std::size_t i = 0; i < n; ++i)
        if (coin(rng))
            out.set(i);
    return out;
}

BlockFamily random_covering(std::size_t n, std::size_t m, Rng& rng, double density) {
    if (n == 0 || m == 0)
        throw PreconditionError("random_covering needs n >= 1 and m >= 1");
    std::vector<ObjectSet> members;
    members.reserve(m);
    for (std::size_t b = 0; b < m; ++b) {
        ObjectSet s = random_subset(n, rng, density);
        if (s.none())
            s.set(pick(rng, n));
        members.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < n; ++i) {
        bool covered = false;
        for (const auto& s : members)
            covered = covered || s.test(i);
        if (!covered)
            members[pick(rng, m)].set(i);
    }
    std::vector<Block> blocks;
    for (std::size_t b = 0; b < m; ++b)
        blocks.emplace_back("B" + std::to_string(b + 1), std::move(members[b]));
    return BlockFamily(Universe(object_labels(n)), std::move(blocks));
}

BlockFamily random_partition(std::size_t n, std::size_t max_classes, Rng& rng) {
    std::vector<ObjectSet> classes(std::max<std::size_t>(1, max_classes), ObjectSet(n));
    for (std::size_t i = 0; i < n; ++i)
        classes[pick(rng, classes.size())].set(i);
    std::vector<Block> blocks;
    for (auto& c : classes)
        if (c.any())
            blocks.emplace_back("P" + std::to_string(blocks.size() + 1), std::move(c));
    return BlockFamily(Universe(object_labels(n)), std::move(blocks));
}

std::optional<Delta> random_delta(const BlockFamily& family, DeltaKind kind, Rng& rng,
                                  std::uint64_t& serial, std::size_t batch) {
    const std::size_t n = family.object_count();
    const std::size_t m = family.block_count();
    switch (kind) {
    case DeltaKind::AE: {
        AddBlocks d;
        for (std::size_t r = 0; r < batch; ++r) {
            ObjectSet s = random_subset(n, rng, 0.3);
            if (s.none())
                s.set(pick(rng, n));
            d.blocks.emplace_back("A" + std::to_string(serial++), std::move(s));
        }
        return d;
    }
    case DeltaKind::DE: {
        if (m < 2)
            return std::nullopt;
        std::vector<std::size_t> order(m);
        for (std::size_t b = 0; b < m; ++b)
            order[b] = b;
        std::shuffle(order.begin(), order.end(), rng);
        DeleteBlocks d;
        for (std::size_t r = 0; r < std::min(batch, m - 1); ++r)
            d.names.push_back(family.blocks()[order[r]].name);
        return d;
    }
    case DeltaKind::AO: {
        AddObjects d;
        for (std::size_t r = 0; r < batch; ++r) {
            d.labels.push_back("n" + std::to_string(serial++));
            std::vector<std::string> joins;
            const std::size_t first = pick(rng, m);
            for (std::size_t b = 0; b < m; ++b)
                if (b == first || std::bernoulli_distribution(0.2)(rng))
                    joins.push_back(family.blocks()[b].name);
            d.memberships.push_back(std::move(joins));
        }
        return d;
    }
    case DeltaKind::DO: {
        if (n < 2)
            return std::nullopt;
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i)
            order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        const std::size_t count = std::min(batch, n - 1);
        // Keep trying subsets until at least one block survives.
        for (std::size_t attempt = 0; attempt < 8; ++attempt) {
            ObjectSet removed(n);
            for (std::size_t r = 0; r < count; ++r)
                removed.set(order[r]);
            bool survives = false;
            for (const auto& block : family.blocks())
                survives = survives || !block.members->is_subset_of(removed);
            if (survives) {
                DeleteObjects d;
                removed.for_each_one([&](std::size_t i) { d.labels.push_back(family.universe().label(i)); });
                return d;
            }
            std::shuffle(order.begin(), order.end(), rng);
        }
        return std::nullopt;
    }
    case DeltaKind::Move: {
        for (std::size_t attempt = 0; attempt < 64; ++attempt) {
            const std::size_t f = pick(rng, m);
            const auto& from = family.members(f);
            if (from.count() < 2)
                continue;
            const auto ks = from.ones();
            const std::size_t k = ks[pick(rng, ks.size())];
            const std::size_t t = pick(rng, m);
            if (t == f || family.members(t).test(k))
                continue;
            return MoveObject{family.universe().label(k), family.blocks()[f].name,
                              family.blocks()[t].name};
        }
        return std::nullopt;
    }
    case DeltaKind::Isolate: {
        const std::size_t f = pick(rng, m);
        const auto ks = family.members(f).ones();
        return IsolateObject{family.universe().label(ks[pick(rng, ks.size())]),
                             family.blocks()[f].name, "S" + std::to_string(serial++)};
    }
    }
    return std::nullopt;
}

Delta random_any_delta(const BlockFamily& family, Rng& rng, std::uint64_t& serial) {
    static constexpr DeltaKind kinds[] = {DeltaKind::AE, DeltaKind::DE, DeltaKind::AO,
                                          DeltaKind::DO, DeltaKind::Move, DeltaKind::Isolate};
    for (;;) {
        const auto kind = kinds[pick(rng, std::size(kinds))];
        const std::size_t batch = 1 + pick(rng, 3);
        if (auto d = random_delta(family, kind, rng, serial, batch))
            return *d;
    }
}

} // namespace covmat
