#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mzv/cache.hpp"
#include "mzv/verify.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_parse = 2;
constexpr int exit_divergent = 3;
constexpr int exit_precision = 4;
constexpr int exit_cache = 5;

std::string cache_path_or_env(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("MZV_CACHE")) return env;
    return {};
}

std::vector<mzv::rational> parse_lambda_list(const std::string& text) {
    std::vector<mzv::rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(mzv::parse_rational(item));
    }
    return out;
}

void print_report_table(const mzv::verification_report& report) {
    for (const auto& row : report.results) {
        std::cout << (row.pass ? "[PASS] " : "[FAIL] ") << row.id;
        if (!row.params.empty()) std::cout << "(" << row.params << ")";
        if (!row.note.empty())
            std::cout << "  error: " << row.note;
        else if (row.residual != "0")
            std::cout << "  residual=" << row.residual << " bound=" << row.bound;
        std::cout << "\n";
    }
    std::cout << report.passed << "/" << report.results.size() << " passed";
    if (report.failed) std::cout << ", " << report.failed << " FAILED";
    std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mzv - multiple zeta value workbench"};
    app.require_subcommand(1);

    std::string expr, tol_text = "1e-10", cache_flag, backend_name = "holder";
    std::string suite_csv = "all", report_path, csv_path, lambda_csv;
    std::string arg_a, arg_b, cache_cmd;
    int workers = 4;
    long long seed = 20220326;
    int p_max = -1, q_max = -1, w_max = -1;

    auto* c_eval = app.add_subcommand("eval", "evaluate an index or a formal sum");
    c_eval->add_option("expr", expr)->required();
    c_eval->add_option("--tol", tol_text, "absolute tolerance");
    c_eval->add_option("--cache", cache_flag, "cache file (or env MZV_CACHE)");
    c_eval->add_option("--backend", backend_name)->check(CLI::IsMember({"holder", "direct"}));

    auto* c_verify = app.add_subcommand("verify", "run identity suites");
    c_verify->add_option("--suite", suite_csv, "suite ids, comma separated, or 'all'");
    c_verify->add_option("--tol", tol_text);
    c_verify->add_option("--p-max", p_max);
    c_verify->add_option("--q-max", q_max);
    c_verify->add_option("--w-max", w_max);
    c_verify->add_option("--lambda", lambda_csv, "rationals like 0,1,-1,-2,3/2");
    c_verify->add_option("--workers", workers);
    c_verify->add_option("--seed", seed);
    c_verify->add_option("--report", report_path, "write JSON report");
    c_verify->add_option("--csv", csv_path, "write CSV report");
    c_verify->add_option("--cache", cache_flag);

    auto* c_dual = app.add_subcommand("dual", "dual of an admissible unsigned index");
    c_dual->add_option("index", arg_a)->required();
    auto* c_shuffle = app.add_subcommand("shuffle", "shuffle product of two indices");
    c_shuffle->add_option("x", arg_a)->required();
    c_shuffle->add_option("y", arg_b)->required();
    auto* c_stuffle = app.add_subcommand("stuffle", "harmonic product of two indices");
    c_stuffle->add_option("x", arg_a)->required();
    c_stuffle->add_option("y", arg_b)->required();
    auto* c_star = app.add_subcommand("star", "expand a z-star index into plain values");
    c_star->add_option("index", arg_a)->required();

    auto* c_cache = app.add_subcommand("cache", "cache maintenance");
    c_cache->add_option("command", cache_cmd)->required()->check(
        CLI::IsMember({"stats", "rebuild", "path"}));
    c_cache->add_option("--cache", cache_flag);

    auto* c_list = app.add_subcommand("list-identities", "list registered identity suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_eval->parsed()) {
            const mzv::real tol(tol_text);
            const std::string path = cache_path_or_env(cache_flag);
            mzv::value_cache cache(path);
            mzv::eval_options opts;
            opts.method =
                backend_name == "direct" ? mzv::backend::direct : mzv::backend::holder;
            const mzv::evaluator ev(path.empty() ? nullptr : &cache, opts);
            const mzv::star_sum sum = mzv::parse_sum(expr);
            mzv::eval_result r;
            bool single_hit = false;
            if (sum.size() == 1 && sum.terms().begin()->second == 1) {
                const auto& idx = sum.terms().begin()->first;
                r = idx.starred() ? ev.eval_star(idx, tol) : ev.eval_index(idx, tol);
                single_hit = r.cache_hit;
            } else {
                r = ev.eval_sum(sum, tol);
            }
            if (!path.empty()) cache.save();
            std::cout << sum.str() << "\n";
            std::cout << "value = " << mzv::to_decimal(r.value, 32) << "\n";
            std::cout << "error_bound = " << mzv::to_decimal(r.error_bound, 4) << "\n";
            std::cout << "source = " << (single_hit ? "cache-hit" : "computed") << "\n";
            return exit_ok;
        }

        if (c_verify->parsed()) {
            mzv::suite_config config;
            config.suites.clear();
            std::stringstream ss(suite_csv);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) config.suites.push_back(item);
            if (config.suites.empty()) config.suites = {"all"};
            config.tol = mzv::real(tol_text);
            config.workers = workers;
            config.params.seed = static_cast<std::uint64_t>(seed);
            if (p_max >= 0) config.params.p_max = p_max;
            if (q_max >= 0) config.params.q_max = q_max;
            if (w_max >= 0) config.params.w_max = w_max;
            if (!lambda_csv.empty()) config.params.lambdas = parse_lambda_list(lambda_csv);
            config.cache_path = cache_path_or_env(cache_flag);
            config.report_path = report_path;
            config.csv_path = csv_path;

            mzv::value_cache cache(config.cache_path);
            mzv::verification_report report =
                mzv::run_suites(config, config.cache_path.empty() ? nullptr : &cache);
            print_report_table(report);
            mzv::write_report_files(report);
            return report.failed == 0 ? exit_ok : exit_verify_failed;
        }

        if (c_dual->parsed()) {
            std::cout << mzv::render(mzv::dual(mzv::parse_index(arg_a))) << "\n";
            return exit_ok;
        }
        if (c_shuffle->parsed()) {
            const auto x = mzv::parse_index(arg_a);
            const auto y = mzv::parse_index(arg_b);
            std::cout << mzv::shuffle_indices(x, y).str() << "\n";
            return exit_ok;
        }
        if (c_stuffle->parsed()) {
            const auto x = mzv::parse_index(arg_a);
            const auto y = mzv::parse_index(arg_b);
            std::cout << mzv::stuffle(x, y).str() << "\n";
            return exit_ok;
        }
        if (c_star->parsed()) {
            const auto idx = mzv::parse_index(arg_a);
            std::cout << mzv::star_expand(idx).str() << "\n";
            return exit_ok;
        }

        if (c_cache->parsed()) {
            const std::string path = cache_path_or_env(cache_flag);
            if (cache_cmd == "path") {
                std::cout << (path.empty() ? "(memory only)" : path) << "\n";
                return exit_ok;
            }
            if (path.empty()) {
                std::cout << "no cache configured (use --cache or MZV_CACHE)\n";
                return exit_ok;
            }
            if (cache_cmd == "stats") {
                const mzv::value_cache cache(path);
                std::cout << cache.size() << " entries\n";
                for (const auto& [tier, count] : cache.tier_counts())
                    std::cout << "tier " << tier << " (1e-" << 6 * tier << "): " << count
                              << " entries\n";
                return exit_ok;
            }
            // rebuild: salvage what parses, re-verify all entries, rewrite.
            mzv::value_cache::load_stats stats;
            mzv::value_cache cache(path, mzv::value_cache::salvage, stats);
            const mzv::evaluator ev;
            const auto rep = cache.rebuild(ev);
            std::cout << "checked " << rep.checked << " entries, dropped " << rep.mismatched
                      << " mismatched";
            if (stats.dropped_lines)
                std::cout << ", removed " << stats.dropped_lines
                          << " corrupt lines (first at line " << stats.first_bad_line << ")";
            std::cout << "\n";
            return stats.dropped_lines ? exit_cache : exit_ok;
        }

        if (c_list->parsed()) {
            for (const auto& def : mzv::identity_registry())
                std::cout << def.id << "\t" << def.description << "\n";
            return exit_ok;
        }
    } catch (const mzv::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse;
    } catch (const mzv::divergent_index& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_divergent;
    } catch (const mzv::divergent_term& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_divergent;
    } catch (const mzv::precision_unreachable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_precision;
    } catch (const mzv::cache_corrupt& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_cache;
    } catch (const mzv::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse;
    }
    return exit_ok;
}
