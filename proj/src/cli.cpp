#include "covmat/cli.hpp"

#include "covmat/approx.hpp"
#include "covmat/bench.hpp"
#include "covmat/compress.hpp"
#include "covmat/dynamic.hpp"
#include "covmat/error.hpp"
#include "covmat/parallel.hpp"
#include "covmat/state.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace covmat {

namespace {

// Missing or unwritable files count as usage errors.
class IoError : public Error {
public:
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text))
        throw IoError("cannot write '" + path + "'");
}

SessionState load_state_file(const std::string& path) { return load_state(read_file(path)); }

ObjectSet read_query(const Universe& universe, const std::string& spec) {
    if (!spec.empty() && spec.front() == '@')
        return parse_label_set(universe, read_file(spec.substr(1)));
    return parse_label_set(universe, spec);
}

std::string vector_text(const ObjectSet& set) {
    std::string s;
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (i)
            s += ' ';
        s += set.test(i) ? '1' : '0';
    }
    return s;
}

void print_set(std::ostream& out, std::string_view name, const Universe& universe,
               const ObjectSet& set, bool vectors) {
    const auto labels = format_set(universe, set);
    out << name << ':' << (labels.empty() ? "" : " ") << labels;
    if (vectors)
        out << "  [" << vector_text(set) << ']';
    out << '\n';
}

void print_matrices(std::ostream& out, const CharCache& cache) {
    out << "Gamma:\n" << dump(cache.gamma()) << "Pi:\n" << dump(cache.pi());
}

// Labels whose gamma or pi row differs between two caches, compared over the
// columns both universes share.
std::vector<std::string> changed_rows(const CharCache& before, const CharCache& after) {
    const auto& old_u = before.universe();
    const auto& new_u = after.universe();
    std::vector<std::pair<std::size_t, std::size_t>> shared;
    for (std::size_t j = 0; j < new_u.size(); ++j)
        if (const auto oj = old_u.find(new_u.label(j)))
            shared.emplace_back(j, *oj);
    std::vector<std::string> out;
    for (const auto& [i, oi] : shared) {
        for (const auto& [j, oj] : shared) {
            if (after.gamma().get(i, j) != before.gamma().get(oi, oj) ||
                after.pi().get(i, j) != before.pi().get(oi, oj)) {
                out.push_back(new_u.label(i));
                break;
            }
        }
    }
    return out;
}

std::string join(const std::vector<std::string>& items) {
    std::string s;
    for (const auto& item : items)
        s += (s.empty() ? "" : " ") + item;
    return s;
}

int cmd_build(const std::string& file, const std::string& state_path, bool per_block,
              std::ostream& out) {
    const BlockFamily family = parse_family(read_file(file));
    const SessionState state = new_session(family, file);
    const auto report = validate(family);
    out << "objects: " << family.object_count() << "  blocks: " << family.block_count()
        << "  covering: " << (report.is_covering ? "yes" : "no") << '\n';
    if (!report.is_covering)
        out << "uncovered: " << format_set(family.universe(), report.uncovered) << '\n';
    print_matrices(out, state.cache);
    if (per_block) {
        for (const auto& block : family.blocks()) {
            out << "Gamma[" << block.name << "]:\n" << dump(block_gamma(*block.members));
            out << "Pi[" << block.name << "]:\n" << dump(block_pi(*block.members));
        }
    }
    const std::string path = state_path.empty() ? file + ".state.json" : state_path;
    write_file(path, save_state(state));
    out << "state: " << path << '\n';
    return kExitOk;
}

int cmd_approx(const std::string& state_path, const std::string& set_spec, bool oracle,
               bool report_mode, bool vectors, std::ostream& out) {
    const SessionState state = load_state_file(state_path);
    const auto& cache = state.cache;
    const ObjectSet query = read_query(cache.universe(), set_spec);
    if (report_mode) {
        const auto report = equivalence_report(cache, query);
        for (const auto& entry : report.entries) {
            const auto name = operator_name(entry.op);
            if (entry.matches) {
                print_set(out, std::string(name) + " match", cache.universe(), entry.matrix_value,
                          vectors);
            } else {
                out << name << " MISMATCH\n";
                print_set(out, "  matrix", cache.universe(), entry.matrix_value, vectors);
                print_set(out, "  oracle", cache.universe(), entry.oracle_value, vectors);
            }
        }
        out << "PiT*Pi = Pi: " << (pi_transpose_pi_equals_pi(cache) ? "true" : "false") << '\n';
        return kExitOk;
    }
    const ApproxSextuple result =
        oracle ? approx_oracle(cache.family(), query) : approx_matrix(cache, query);
    for (const Operator op : kAllOperators)
        print_set(out, operator_name(op), cache.universe(), result.get(op), vectors);
    return kExitOk;
}

int cmd_update(const std::string& state_path, const std::string& script_path,
               const std::string& out_path, std::ostream& out) {
    SessionState state = load_state_file(state_path);
    const CharCache before = state.cache;
    ScriptResult result = apply_script(state.cache, read_file(script_path));

    std::vector<std::string> added, removed;
    for (const auto& label : result.cache.universe().labels())
        if (!before.universe().find(label))
            added.push_back(label);
    for (const auto& label : before.universe().labels())
        if (!result.cache.universe().find(label))
            removed.push_back(label);

    out << "applied: " << result.applied.size() << '\n';
    out << "changed rows: " << join(changed_rows(before, result.cache)) << '\n';
    if (!added.empty())
        out << "added objects: " << join(added) << '\n';
    if (!removed.empty())
        out << "removed objects: " << join(removed) << '\n';
    const auto report = validate(result.cache.family());
    out << "covering: " << (report.is_covering ? "yes" : "no") << '\n';
    print_matrices(out, result.cache);

    for (auto& line : result.applied)
        state.history.push_back(std::move(line));
    state.cache = std::move(result.cache);
    const std::string path = out_path.empty() ? state_path : out_path;
    write_file(path, save_state(state));
    out << "state: " << path << '\n';
    return kExitOk;
}

int cmd_verify(const std::string& state_path, std::ostream& out) {
    // load_state already rebuilds and checks the digest.
    const SessionState state = load_state_file(state_path);
    const CharCache& cache = state.cache;
    bool ok = true;
    auto check = [&](const char* name, bool passed) {
        out << (passed ? "ok    " : "FAIL  ") << name << '\n';
        ok = ok && passed;
    };
    check("digest", true);
    check("replay reproduces cache", replay(state) == cache);
    check("fast construction equals definitional products", matches_definition(cache));
    check("gamma symmetric", transpose(cache.gamma()) == cache.gamma());

    const auto report = validate(cache.family());
    bool diag = true;
    for (std::size_t i = 0; i < cache.object_count(); ++i)
        diag = diag && cache.gamma().get(i, i) == !report.uncovered.test(i);
    check("gamma diagonal marks covered objects", diag);

    if (report.is_covering) {
        check("pi has no 2 entries", !cache.pi().has_twos());
        bool pi_diag = true;
        for (std::size_t i = 0; i < cache.object_count(); ++i)
            pi_diag = pi_diag && cache.pi().get(i, i) == 1;
        check("pi diagonal is 1", pi_diag);
        check("pi <= gamma", leq(cache.pi(), cache.gamma()));
        out << "report PiT*Pi = Pi: " << (pi_transpose_pi_equals_pi(cache) ? "true" : "false")
            << '\n';
    } else {
        out << "note  family is not a covering (uncovered: "
            << format_set(cache.universe(), report.uncovered) << ")\n";
    }
    if (!ok)
        throw InvariantError("verification failed");
    return kExitOk;
}

int cmd_compress(const std::string& state_path, const std::string& map_path,
                 const std::string& set_spec, bool vectors, std::ostream& out) {
    const SessionState state = load_state_file(state_path);
    const BlockFamily& family = state.cache.family();
    const ConsistentMap map = parse_map(family.universe(), read_file(map_path));
    const ObjectSet query = read_query(family.universe(), set_spec);
    const bool consistent = check_consistent(family, map);
    out << "consistent: " << (consistent ? "yes" : "no") << '\n';
    if (!consistent)
        throw PreconditionError("map is not consistent with the covering");
    const BlockFamily target = induced_family(family, map);
    for (const auto& block : target.blocks())
        out << "f(" << block.name << "): " << format_set(target.universe(), *block.members)
            << '\n';
    const auto result = approx_via_compression(family, map, query);
    print_set(out, "f(X)", target.universe(), result.target_query, vectors);
    print_set(out, "SH(f(X))", target.universe(), result.target_sh, vectors);
    print_set(out, "SL(f(X))", target.universe(), result.target_sl, vectors);
    print_set(out, "SH", family.universe(), result.sh, vectors);
    print_set(out, "SL", family.universe(), result.sl, vectors);
    return kExitOk;
}

int cmd_bench(std::size_t n, std::size_t m, std::size_t deltas, std::uint64_t seed,
              std::size_t batch, bool scaling, std::ostream& out) {
    if (const char* env = std::getenv("RSEED"); env && *env)
        seed = std::strtoull(env, nullptr, 10);
    const auto report = bench_incremental(n, m, deltas, seed, batch);
    out << format_report(report);
    if (scaling) {
        out << "scaling (m=" << m << "):\n";
        char buf[96];
        for (const auto& p : bench_scaling({500, 1000, 2000, 4000}, m, deltas, seed)) {
            std::snprintf(buf, sizeof buf, "  n=%-5zu rebuild %10.3f ms  move %8.4f ms\n", p.n,
                          p.rebuild_ms, p.move_ms);
            out << buf;
        }
    }
    if (!report.all_identical())
        throw InvariantError("incremental result differs from rebuild");
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Characteristic matrices and approximations of coverings"};
    app.require_subcommand(1);
    app.fallthrough();
    std::size_t threads = 0;
    app.add_option("--threads", threads, "Worker thread cap (0 = hardware)");

    std::string file, state_path, script_path, out_path, set_spec, map_path;
    bool per_block = false, oracle = false, matrix = false, report_mode = false, vectors = false;
    std::size_t n = 1000, m = 32, deltas = 20, batch = 32;
    std::uint64_t seed = 1;
    bool scaling = false;

    auto* build = app.add_subcommand("build", "Build gamma and pi from a covering file");
    build->add_option("file", file, "Covering file")->required();
    build->add_option("--state", state_path, "State file to write (default <file>.state.json)");
    build->add_flag("--per-block", per_block, "Also print per-block matrices");

    auto* approx = app.add_subcommand("approx", "Approximations of a query set");
    approx->add_option("state", state_path, "State file")->required();
    approx->add_option("--set", set_spec, "Comma-separated labels or @file")->required();
    auto* f_oracle = approx->add_flag("--oracle", oracle, "Set-theoretic evaluation");
    auto* f_matrix = approx->add_flag("--matrix", matrix, "Matrix evaluation (default)");
    auto* f_report = approx->add_flag("--report", report_mode, "Compare both evaluations");
    f_oracle->excludes(f_matrix)->excludes(f_report);
    f_matrix->excludes(f_report);
    approx->add_flag("--vectors", vectors, "Also print 0/1 vectors");

    auto* update = app.add_subcommand("update", "Apply a delta script incrementally");
    update->add_option("state", state_path, "State file")->required();
    update->add_option("script", script_path, "Delta script")->required();
    update->add_option("--out", out_path, "Write the new state here instead of in place");

    auto* verify = app.add_subcommand("verify", "Check a state file's invariants");
    verify->add_option("state", state_path, "State file")->required();

    auto* compress = app.add_subcommand("compress", "SH/SL through a consistent map");
    compress->add_option("state", state_path, "State file")->required();
    compress->add_option("--map", map_path, "Map file of 'x -> y' lines")->required();
    compress->add_option("--set", set_spec, "Comma-separated labels or @file")->required();
    compress->add_flag("--vectors", vectors, "Also print 0/1 vectors");

    auto* bench = app.add_subcommand("bench", "Incremental vs rebuild timings");
    bench->add_option("--n", n, "Objects")->check(CLI::PositiveNumber);
    bench->add_option("--m", m, "Blocks")->check(CLI::PositiveNumber);
    bench->add_option("--deltas", deltas, "Updates per kind");
    bench->add_option("--seed", seed, "Seed (RSEED overrides)");
    bench->add_option("--batch", batch, "Objects per AO/DO update")->check(CLI::PositiveNumber);
    bench->add_flag("--scaling", scaling, "Also time n = 500..4000");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    set_thread_limit(threads);
    try {
        if (*build)
            return cmd_build(file, state_path, per_block, out);
        if (*approx)
            return cmd_approx(state_path, set_spec, oracle, report_mode, vectors, out);
        if (*update)
            return cmd_update(state_path, script_path, out_path, out);
        if (*verify)
            return cmd_verify(state_path, out);
        if (*compress)
            return cmd_compress(state_path, map_path, set_spec, vectors, out);
        if (*bench)
            return cmd_bench(n, m, deltas, seed, batch, scaling, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const InvariantError& e) {
        err << "invariant failure: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInvariant;
    }
    return kExitUsage;
}

} // namespace covmat
