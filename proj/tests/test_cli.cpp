#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covmat/cli.hpp"
#include "covmat/dynamic.hpp"
#include "covmat/state.hpp"
#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace covmat;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("covmat_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return file(name);
    }
};

std::string built_state(const TempDir& dir, const std::string& fixture) {
    const auto state = dir.file(fixture + ".json");
    REQUIRE(cli({"build", testing::data_path(fixture), "--state", state}).code == kExitOk);
    return state;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("build prints the exact matrices") {
    TempDir dir;
    const auto r = cli({"build", testing::data_path("four_objects.cov"), "--state", dir.file("s.json"),
                        "--per-block"});
    REQUIRE(r.code == kExitOk);
    CHECK(contains(r.out, "Gamma:\n1 1 0 1\n1 1 0 1\n0 0 1 1\n1 1 1 1\n"));
    CHECK(contains(r.out, "Pi:\n1 0 0 1\n1 1 0 1\n0 0 1 1\n0 0 0 1\n"));
    CHECK(contains(r.out, "Gamma[C1]:\n1 0 0 1\n0 0 0 0\n0 0 0 0\n1 0 0 1\n"));
    CHECK(contains(r.out, "Pi[C1]:\n1 0 0 1\n2 1 1 2\n2 1 1 2\n1 0 0 1\n"));
    CHECK(fs::exists(dir.file("s.json")));

    const auto six = cli({"build", testing::data_path("six_objects.cov"), "--state", dir.file("six.json")});
    CHECK(contains(six.out, "Gamma:\n1 1 0 0 1 1\n1 1 0 0 1 1\n0 0 1 1 1 1\n0 0 1 1 1 1\n"
                            "1 1 1 1 1 1\n1 1 1 1 1 1\n"));
}

TEST_CASE("approx in every mode") {
    TempDir dir;
    const auto six = built_state(dir, "six_objects.cov");
    auto r = cli({"approx", six, "--set", "x1,x2,x3,x4", "--matrix"});
    REQUIRE(r.code == kExitOk);
    CHECK(contains(r.out, "SH: x1 x2 x3 x4 x5 x6\nSL:\n"));

    r = cli({"approx", six, "--set", "x1,x2,x3,x4", "--oracle", "--vectors"});
    CHECK(contains(r.out, "SH: x1 x2 x3 x4 x5 x6  [1 1 1 1 1 1]\n"));

    const auto four = built_state(dir, "four_objects.cov");
    r = cli({"approx", four, "--set", "x1,x4", "--report"});
    CHECK(contains(r.out, "XL MISMATCH\n  matrix:\n  oracle: x1 x4\n"));
    CHECK(contains(r.out, "PiT*Pi = Pi: false"));

    const auto query = dir.write("q.txt", "x2\n");
    r = cli({"approx", four, "--set", "@" + query, "--oracle"});
    CHECK(r.out == "SH: x1 x2 x4\nSL:\nIH: x2\nIL:\nXH: x1 x2 x4\nXL:\n");

    CHECK(cli({"approx", four, "--set", "x9"}).code == kExitParse);
    CHECK(cli({"approx", four, "--set", "x1", "--oracle", "--matrix"}).code == kExitUsage);
}

TEST_CASE("update applies a script and records history") {
    TempDir dir;
    const auto four = built_state(dir, "four_objects.cov");
    auto r = cli({"update", four, testing::data_path("delete_c3.delta"), "--out", dir.file("u.json")});
    REQUIRE(r.code == kExitOk);
    CHECK(contains(r.out, "changed rows: x3 x4\n"));
    CHECK(contains(r.out, "\n2 1 1 2\n"));
    CHECK(contains(r.out, "covering: no"));

    // approximations are refused on the non-covering result
    CHECK(cli({"approx", dir.file("u.json"), "--set", "x1"}).code == kExitPrecondition);
    CHECK(cli({"verify", dir.file("u.json")}).code == kExitOk);

    r = cli({"update", four, testing::data_path("add_x5_x6.delta")});
    REQUIRE(r.code == kExitOk);
    CHECK(contains(r.out, "added objects: x5 x6"));
    const auto state = load_state(read_text(four));
    CHECK(state.history == std::vector<std::string>{"add-object x5: C1 C2", "add-object x6: C2 C3"});
    CHECK(replay(state) == state.cache);

    r = cli({"update", four, testing::data_path("move_x1.delta")});
    CHECK(contains(r.out, "changed rows: x1"));

    const auto bad = dir.write("bad.delta", "del-block C1\nmove x3 C9 C1\n");
    r = cli({"update", four, bad});
    CHECK(r.code == kExitPrecondition);
    CHECK(contains(r.err, "line 2"));
    const auto junk = dir.write("junk.delta", "frobnicate\n");
    CHECK(cli({"update", four, junk}).code == kExitParse);
}

TEST_CASE("verify and state files") {
    TempDir dir;
    const auto four = built_state(dir, "four_objects.cov");
    auto r = cli({"verify", four});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "ok    pi <= gamma"));
    CHECK(contains(r.out, "report PiT*Pi = Pi: false"));

    const auto family = testing::four_objects();
    const auto session = new_session(family);
    const auto text = save_state(session);
    const auto loaded = load_state(text);
    CHECK(cache_digest(loaded.cache) == cache_digest(session.cache));
    CHECK(loaded.cache == session.cache);

    // a flipped block member no longer matches the stored digest
    auto corrupt = text;
    const auto pos = corrupt.find("\"members\": [\n        0,\n        3");
    REQUIRE(pos != std::string::npos);
    corrupt.replace(pos, std::string("\"members\": [\n        0,\n        3").size(),
                    "\"members\": [\n        1,\n        3");
    const auto corrupted = dir.write("corrupt.json", corrupt);
    r = cli({"verify", corrupted});
    CHECK(r.code == kExitInvariant);
    CHECK(contains(r.err, "digest"));

    CHECK(cli({"verify", dir.write("garbage.json", "{not json")}).code == kExitParse);
    CHECK(cli({"verify", dir.write("other.json", "{\"format\": \"x\"}")}).code == kExitParse);
}

TEST_CASE("compress") {
    TempDir dir;
    const auto six = built_state(dir, "six_objects.cov");
    auto r = cli({"compress", six, "--map", testing::data_path("six_objects.map"), "--set", "x1,x2,x3,x4"});
    REQUIRE(r.code == kExitOk);
    CHECK(contains(r.out, "f(C1): y1\nf(C2): y2 y3\nf(C3): y1 y3\n"));
    CHECK(contains(r.out, "SH(f(X)): y1 y2 y3\n"));
    CHECK(contains(r.out, "SH: x1 x2 x3 x4 x5 x6\n"));

    CHECK(cli({"compress", six, "--map", testing::data_path("six_objects.map"), "--set", "x1"}).code ==
          kExitPrecondition);
    const auto bad_map = dir.write("bad.map", "x1 -> a\nx2 -> a\nx3 -> a\nx4 -> b\nx5 -> b\nx6 -> b\n");
    CHECK(cli({"compress", six, "--map", bad_map, "--set", "x1,x2,x3"}).code == kExitPrecondition);
}

TEST_CASE("bench at toy scale") {
    const auto r = cli({"bench", "--n", "4", "--m", "3", "--deltas", "5", "--batch", "1", "--threads", "2"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "identical"));
    CHECK(!contains(r.out, "MISMATCH"));
}

TEST_CASE("usage and input errors") {
    TempDir dir;
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
    CHECK(cli({"build"}).code == kExitUsage);
    CHECK(cli({"build", dir.file("missing.cov")}).code == kExitUsage);
    CHECK(cli({"--help"}).code == kExitOk);
    const auto bad = dir.write("bad.cov", "universe: a\nblock B: z\n");
    const auto r = cli({"build", bad, "--state", dir.file("b.json")});
    CHECK(r.code == kExitParse);
    CHECK(contains(r.err, "line 2"));
}
