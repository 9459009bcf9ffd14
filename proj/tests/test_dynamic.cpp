#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covmat/dynamic.hpp"
#include "covmat/error.hpp"
#include "covmat/random.hpp"
#include "support.hpp"

using namespace covmat;
using testing::Grid;
using testing::grid;

namespace {

const Grid kGamma4 = {{1, 1, 0, 1}, {1, 1, 0, 1}, {0, 0, 1, 1}, {1, 1, 1, 1}};
const Grid kPi4 = {{1, 0, 0, 1}, {1, 1, 0, 1}, {0, 0, 1, 1}, {0, 0, 0, 1}};

CharCache base() { return build_cache(testing::four_objects()); }

ObjectSet set4(const std::string& labels) {
    return testing::set_of(testing::four_objects().universe(), labels);
}

// Reference: rebuild from scratch, and also through the scalar formulas.
void check_rebuild(const CharCache& updated) {
    CHECK(updated == build_cache(updated.family()));
    CHECK(grid(updated.gamma()) == testing::oracle_gamma(updated.family()));
    CHECK(grid(updated.pi()) == testing::oracle_pi(updated.family()));
}

} // namespace

TEST_CASE("AE adds a block") {
    WorkStats stats;
    const auto before = base();
    const auto c = apply_ae(before, AddBlocks{{{"C4", set4("x2,x4")}}}, &stats);
    CHECK(grid(c.gamma()) == kGamma4);
    CHECK(grid(c.pi()) == Grid{{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {0, 0, 0, 1}});
    CHECK(stats.existing_block_reads == 0);
    CHECK(stats.block_vectors_written == 1);
    check_rebuild(c);
    // the old vectors are shared, not copied
    for (std::size_t b = 0; b < 3; ++b)
        CHECK(c.family().blocks()[b].members == before.family().blocks()[b].members);
}

TEST_CASE("AE with a duplicate block changes nothing") {
    const auto c = apply_ae(base(), AddBlocks{{{"C1copy", set4("x1,x4")}}});
    CHECK(c.gamma() == base().gamma());
    CHECK(c.pi() == base().pi());
}

TEST_CASE("DE deletes a block") {
    const auto c = apply_de(base(), DeleteBlocks{{"C3"}});
    CHECK(grid(c.gamma()) == Grid{{1, 1, 0, 1}, {1, 1, 0, 1}, {0, 0, 0, 0}, {1, 1, 0, 1}});
    CHECK(grid(c.pi()) == Grid{{1, 0, 0, 1}, {1, 1, 0, 1}, {2, 1, 1, 2}, {1, 0, 0, 1}});
    CHECK(!c.family().is_covering());
    check_rebuild(c);

    const auto back = apply_ae(c, AddBlocks{{{"C3", set4("x3,x4")}}});
    CHECK(back == base());
}

TEST_CASE("AO adds objects") {
    WorkStats stats;
    const auto c = apply_ao(base(), AddObjects{{"x5", "x6"}, {{"C1", "C2"}, {"C2", "C3"}}}, &stats);
    const auto g = grid(c.gamma());
    CHECK(g[4] == std::vector<int>{1, 1, 0, 1, 1, 1});
    CHECK(g[5] == std::vector<int>{1, 1, 1, 1, 1, 1});
    CHECK(g[2][5] == 1);
    CHECK(g[5][2] == 1);
    CHECK(grid(c.pi()) == Grid{{1, 0, 0, 1, 1, 0}, {1, 1, 0, 1, 1, 1}, {0, 0, 1, 1, 0, 1},
                               {0, 0, 0, 1, 0, 0}, {1, 0, 0, 1, 1, 0}, {0, 0, 0, 1, 0, 1}});
    Grid delta2(4);
    for (std::size_t i = 0; i < 4; ++i)
        delta2[i] = {c.pi().get(i, 4), c.pi().get(i, 5)};
    CHECK(delta2 == Grid{{1, 0}, {1, 1}, {0, 1}, {0, 0}});
    // leading block untouched
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(g[i][j] == kGamma4[i][j]);
            CHECK(c.pi().get(i, j) == kPi4[i][j]);
        }
    CHECK(stats.gamma_rows == 2);
    CHECK(stats.pi_rows == 2);
    CHECK(stats.pi_cols == 2);
    check_rebuild(c);

    CHECK(apply_do(c, DeleteObjects{{"x5", "x6"}}) == base());
}

TEST_CASE("DO deletes objects") {
    const auto c = apply_do(base(), DeleteObjects{{"x4"}});
    CHECK(grid(c.gamma()) == Grid{{1, 1, 0}, {1, 1, 0}, {0, 0, 1}});
    CHECK(grid(c.pi()) == Grid{{1, 0, 0}, {1, 1, 0}, {0, 0, 1}});
    check_rebuild(c);
}

TEST_CASE("DO drops a block it empties") {
    auto f = parse_family("universe: a b c\nblock A: a b\nblock S: c\nblock B: b c\n");
    const auto before = build_cache(f);
    const auto c = apply_do(before, DeleteObjects{{"c"}});
    CHECK(c.family().block_count() == 2);
    CHECK(!c.family().find_block("S"));
    check_rebuild(c);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(c.gamma().get(i, j) == before.gamma().get(i, j));
            CHECK(c.pi().get(i, j) == before.pi().get(i, j));
        }
}

TEST_CASE("CA move") {
    WorkStats stats;
    const auto c = apply_ca_move(base(), MoveObject{"x1", "C1", "C3"}, &stats);
    CHECK(grid(c.gamma()) == Grid{{1, 1, 1, 1}, {1, 1, 0, 1}, {1, 0, 1, 1}, {1, 1, 1, 1}});
    CHECK(grid(c.pi()) == Grid{{1, 0, 0, 1}, {1, 1, 0, 1}, {1, 0, 1, 1}, {0, 0, 0, 1}});
    CHECK(stats.gamma_rows == 1);
    CHECK(stats.gamma_cols == 1);
    CHECK(stats.pi_rows == 1);
    CHECK(stats.pi_cols == 1);
    check_rebuild(c);
}

TEST_CASE("CA move that swaps two blocks' contents changes nothing") {
    const auto f = parse_family("universe: a x\nblock A: a x\nblock B: x\n");
    const auto before = build_cache(f);
    const auto c = apply_ca_move(before, MoveObject{"a", "A", "B"});
    CHECK(c.gamma() == before.gamma());
    CHECK(c.pi() == before.pi());
    check_rebuild(c);
}

TEST_CASE("CA isolate") {
    const auto c = apply_ca_isolate(base(), IsolateObject{"x2", "C2", "C4"});
    CHECK(grid(c.gamma()) == Grid{{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 1}, {1, 0, 1, 1}});
    CHECK(grid(c.pi()) == Grid{{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}});
    CHECK(c.family().members(c.family().block_index("C4")).count() == 1);
    check_rebuild(c);
}

TEST_CASE("CA isolate of a sole member renames its block") {
    const auto f = parse_family("universe: a b\nblock A: a\nblock B: a b\n");
    const auto before = build_cache(f);
    const auto c = apply_ca_isolate(before, IsolateObject{"a", "A", "S"});
    CHECK(!c.family().find_block("A"));
    CHECK(c.gamma() == before.gamma());
    CHECK(c.pi() == before.pi());
    check_rebuild(c);
}

TEST_CASE("precondition failures leave the input untouched") {
    const auto c = base();
    const auto snapshot = c;
    CHECK_THROWS_AS(apply_ae(c, AddBlocks{{{"C1", set4("x1")}}}), PreconditionError);
    CHECK_THROWS_AS(apply_ae(c, AddBlocks{{{"C9", set4("")}}}), PreconditionError);
    CHECK_THROWS_AS(apply_ae(c, AddBlocks{{{"C9", set4("x1")}, {"C9", set4("x2")}}}), PreconditionError);
    CHECK_THROWS_AS(apply_de(c, DeleteBlocks{{"C9"}}), PreconditionError);
    CHECK_THROWS_AS(apply_de(c, DeleteBlocks{{"C1", "C2", "C3"}}), PreconditionError);
    CHECK_THROWS_AS(apply_ao(c, AddObjects{{"x1"}, {{"C1"}}}), PreconditionError);
    CHECK_THROWS_AS(apply_ao(c, AddObjects{{"x5"}, {{"C9"}}}), PreconditionError);
    CHECK_THROWS_AS(apply_ao(c, AddObjects{{"x5"}, {{}}}), PreconditionError);
    CHECK_THROWS_AS(apply_do(c, DeleteObjects{{"x9"}}), PreconditionError);
    CHECK_THROWS_AS(apply_do(c, DeleteObjects{{"x1", "x2", "x3", "x4"}}), PreconditionError);
    CHECK_THROWS_AS(apply_ca_move(c, MoveObject{"x9", "C1", "C3"}), PreconditionError);
    CHECK_THROWS_AS(apply_ca_move(c, MoveObject{"x2", "C1", "C3"}), PreconditionError);
    CHECK_THROWS_AS(apply_ca_move(c, MoveObject{"x1", "C1", "C2"}), PreconditionError);
    CHECK_THROWS_AS(apply_ca_move(c, MoveObject{"x1", "C1", "C1"}), PreconditionError);
    CHECK_THROWS_AS(apply_ca_move(apply_do(c, DeleteObjects{{"x4"}}), MoveObject{"x3", "C3", "C1"}),
                    PreconditionError);
    CHECK_THROWS_AS(apply_ca_isolate(c, IsolateObject{"x2", "C2", "C1"}), PreconditionError);
    CHECK_THROWS_AS(apply_ca_isolate(c, IsolateObject{"x2", "C1", "C4"}), PreconditionError);
    CHECK(c == snapshot);
}

TEST_CASE("DO leaving no block is rejected") {
    const auto f = parse_family("universe: a b\nblock A: a\nblock B: a\n");
    CHECK_THROWS_AS(apply_do(build_cache(f), DeleteObjects{{"a"}}), PreconditionError);
}

TEST_CASE("incremental equals rebuild on random delta sequences") {
    Rng rng(31);
    std::size_t deltas = 0;
    for (int seq = 0; seq < 500; ++seq) {
        const auto f = random_covering(1 + rng() % 12, 1 + rng() % 8, rng);
        auto cache = build_cache(f);
        std::uint64_t serial = 1;
        const std::size_t length = 1 + rng() % 20;
        for (std::size_t step = 0; step < length; ++step) {
            const Delta d = random_any_delta(cache.family(), rng, serial);
            const auto reference = apply_to_family(cache.family(), d);
            cache = apply_delta(cache, d);
            REQUIRE(cache.family() == reference);
            ++deltas;
        }
        REQUIRE(cache == build_cache(cache.family()));
        CHECK(grid(cache.pi()) == testing::oracle_pi(cache.family()));
    }
    MESSAGE(deltas << " deltas applied");
}

TEST_CASE("inverse pairs") {
    Rng rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = build_cache(random_covering(1 + rng() % 12, 1 + rng() % 8, rng));
        std::uint64_t serial = 1;
        const auto ae = std::get<AddBlocks>(*random_delta(c.family(), DeltaKind::AE, rng, serial, 2));
        DeleteBlocks undo_ae;
        for (const auto& [name, members] : ae.blocks)
            undo_ae.names.push_back(name);
        CHECK(apply_de(apply_ae(c, ae), undo_ae) == c);

        const auto ao = std::get<AddObjects>(*random_delta(c.family(), DeltaKind::AO, rng, serial, 3));
        CHECK(apply_do(apply_ao(c, ao), DeleteObjects{ao.labels}) == c);
    }
}

TEST_CASE("locality of CA and AO updates on coverings") {
    Rng rng(33);
    for (int trial = 0; trial < 300; ++trial) {
        const auto c = build_cache(random_covering(2 + rng() % 12, 2 + rng() % 6, rng));
        const std::size_t n = c.object_count();
        std::uint64_t serial = 1;
        for (const DeltaKind kind : {DeltaKind::Move, DeltaKind::Isolate}) {
            const auto d = random_delta(c.family(), kind, rng, serial);
            if (!d)
                continue;
            const std::string label = std::holds_alternative<MoveObject>(*d)
                                          ? std::get<MoveObject>(*d).label
                                          : std::get<IsolateObject>(*d).label;
            const std::size_t k = c.universe().index(label);
            WorkStats stats;
            const auto u = apply_delta(c, *d, &stats);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (i != k && j != k) {
                        CHECK(u.gamma().get(i, j) == c.gamma().get(i, j));
                        CHECK(u.pi().get(i, j) == c.pi().get(i, j));
                    }
            CHECK(stats.gamma_rows == 1);
            CHECK(stats.gamma_cols == 1);
            CHECK(stats.pi_rows == 1);
            CHECK(stats.pi_cols == 1);
        }
        const auto ao = random_delta(c.family(), DeltaKind::AO, rng, serial, 2);
        WorkStats stats;
        const auto u = apply_delta(c, *ao, &stats);
        CHECK(stats.existing_block_reads == 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(u.gamma().get(i, j) == c.gamma().get(i, j));
                CHECK(u.pi().get(i, j) == c.pi().get(i, j));
            }
    }
}

TEST_CASE("delta scripts") {
    const auto f = testing::four_objects();
    const auto c = base();
    const auto r = apply_script(c, "# comment\n\nadd-object x5: C1 C2\nadd-object x6: C2 C3\nmove x1 C1 C3\n");
    CHECK(r.applied == std::vector<std::string>{"add-object x5: C1 C2", "add-object x6: C2 C3",
                                                 "move x1 C1 C3"});
    check_rebuild(r.cache);

    const auto deleted = apply_script(c, "del-block C3");
    CHECK(dump(deleted.cache.pi()).find("2 1 1 2") != std::string::npos);

    try {
        apply_script(c, "del-block C3\nbogus x1\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    try {
        apply_script(c, "del-block C3\nmove x3 C3 C1\n");
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).rfind("line 2:", 0) == 0);
    }
    CHECK_THROWS_AS(apply_script(c, "add-block C9: x7"), ParseError);
    CHECK_THROWS_AS(apply_script(c, "add-block C9:"), ParseError);
    CHECK_THROWS_AS(apply_script(c, "move x1 C1"), ParseError);

    // format_delta round-trips through the parser
    Rng rng(34);
    std::uint64_t serial = 1;
    for (int trial = 0; trial < 100; ++trial) {
        const auto d = random_any_delta(f, rng, serial);
        std::string script;
        for (const auto& line : format_delta(f, d))
            script += line + "\n";
        CHECK(apply_script(c, script).cache == apply_delta(c, d));
    }
}
