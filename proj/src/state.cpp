#include "covmat/state.hpp"

#include "covmat/dynamic.hpp"
#include "covmat/error.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>

namespace covmat {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "covmat-state";
constexpr int kVersion = 1;

json family_to_json(const BlockFamily& family) {
    json blocks = json::array();
    for (const auto& block : family.blocks())
        blocks.push_back({{"name", block.name}, {"members", block.members->ones()}});
    return {{"universe", family.universe().labels()}, {"blocks", std::move(blocks)}};
}

BlockFamily family_from_json(const json& j, const char* where) {
    try {
        Universe universe(j.at("universe").get<std::vector<std::string>>());
        std::vector<Block> blocks;
        for (const auto& b : j.at("blocks")) {
            const auto members = b.at("members").get<std::vector<std::size_t>>();
            blocks.emplace_back(b.at("name").get<std::string>(),
                                ObjectSet::from_indices(universe.size(), members));
        }
        return BlockFamily(std::move(universe), std::move(blocks));
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("state file: bad ") + where + ": " + e.what());
    } catch (const PreconditionError& e) {
        throw ParseError(0, std::string("state file: bad ") + where + ": " + e.what());
    }
}

} // namespace

SessionState new_session(const BlockFamily& family, std::string source) {
    return SessionState{family, {}, build_cache(family), std::move(source)};
}

std::string cache_digest(const CharCache& cache) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    auto feed = [&](const std::string& s) {
        for (const unsigned char c : s) {
            hash ^= c;
            hash *= 0x100000001b3ULL;
        }
    };
    feed(dump(cache.gamma()));
    feed("--\n");
    feed(dump(cache.pi()));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string save_state(const SessionState& state) {
    json j = family_to_json(state.cache.family());
    j["format"] = kFormat;
    j["version"] = kVersion;
    j["source"] = state.source;
    j["origin"] = family_to_json(state.origin);
    j["history"] = state.history;
    j["digest"] = cache_digest(state.cache);
    return j.dump(2) + "\n";
}

SessionState load_state(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("state file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || j.value("format", "") != kFormat)
        throw ParseError(0, "not a covmat state file");
    if (j.value("version", 0) != kVersion)
        throw ParseError(0, "unsupported state file version");

    BlockFamily family = family_from_json(j, "family");
    BlockFamily origin = j.contains("origin") ? family_from_json(j.at("origin"), "origin") : family;
    std::vector<std::string> history;
    std::string source;
    try {
        if (j.contains("history"))
            history = j.at("history").get<std::vector<std::string>>();
        source = j.value("source", "");
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("state file: bad history: ") + e.what());
    }

    CharCache cache = build_cache(family);
    if (j.contains("digest")) {
        const auto stored = j.at("digest").is_string() ? j.at("digest").get<std::string>() : "";
        const auto actual = cache_digest(cache);
        if (stored != actual)
            throw InvariantError("state digest mismatch: stored " + stored + ", rebuilt " + actual);
    }
    return SessionState{std::move(origin), std::move(history), std::move(cache), std::move(source)};
}

CharCache replay(const SessionState& state) {
    std::string script;
    for (const auto& line : state.history)
        script += line + "\n";
    return apply_script(build_cache(state.origin), script).cache;
}

} // namespace covmat
