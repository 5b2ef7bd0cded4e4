#include "mzv/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "mzv/cache.hpp"

namespace mzv {

namespace {

using nlohmann::json;

std::pair<eval_result, eval_result> eval_sides(const identity_instance& inst,
                                               const evaluator& ev, const real& tol) {
    if (inst.custom) return inst.custom(ev, tol);
    auto side = [&](const star_sum& linear, const std::vector<product_term>& products) {
        const std::size_t pieces = 1 + products.size();
        const real sub = tol / real(static_cast<unsigned>(2 * pieces));
        eval_result acc = ev.eval_sum(linear, sub);
        for (const auto& pt : products) {
            const real c = to_real(pt.coef);
            const real ac = boost::multiprecision::abs(c) + 1;
            const eval_result pr = ev.eval_product(pt.left, pt.right, sub / ac);
            acc.value += c * pr.value;
            acc.error_bound += boost::multiprecision::abs(c) * pr.error_bound;
        }
        return acc;
    };
    return {side(inst.lhs, inst.lhs_products), side(inst.rhs, inst.rhs_products)};
}

}  // namespace

verification_row run_instance(const identity_instance& inst, const evaluator& ev,
                              const real& tol) {
    verification_row row;
    row.id = inst.id;
    row.params = inst.param_text();
    const auto start = std::chrono::steady_clock::now();
    try {
        if (inst.exactness == identity_instance::kind::exact_symbolic) {
            if (inst.exact_check) {
                row.pass = inst.exact_check(row.lhs, row.rhs);
            } else {
                const formal_sum l = expand_stars(inst.lhs);
                const formal_sum r = expand_stars(inst.rhs);
                row.pass = l == r;
                row.lhs = "exact(" + std::to_string(l.size()) + " terms)";
                row.rhs = "exact(" + std::to_string(r.size()) + " terms)";
            }
            row.residual = "0";
            row.bound = "0";
        } else {
            const auto [l, r] = eval_sides(inst, ev, tol);
            const real residual = boost::multiprecision::abs(l.value - r.value);
            const real bound = l.error_bound + r.error_bound;
            row.lhs = to_decimal(l.value, 24);
            row.rhs = to_decimal(r.value, 24);
            row.residual = to_decimal(residual, 6);
            row.bound = to_decimal(bound, 6);
            row.pass = residual <= tol + bound;
        }
    } catch (const error& e) {
        row.pass = false;
        row.note = e.what();
    }
    row.millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return row;
}

void suite_config::validate() const {
    if (tol < real("1e-30") || tol > real("1e-4"))
        throw parameter_out_of_range("tolerance must lie in [1e-30, 1e-4]");
    if (workers < 1) throw parameter_out_of_range("workers must be >= 1");
    if (params.p_max && *params.p_max < 0) throw parameter_out_of_range("p-max must be >= 0");
    if (params.q_max && *params.q_max < 0) throw parameter_out_of_range("q-max must be >= 0");
    if (params.w_max && *params.w_max < 0) throw parameter_out_of_range("w-max must be >= 0");
    for (const std::string& id : suites)
        if (id != "all" && !find_suite(id))
            throw parameter_out_of_range("unknown suite id: " + id);
}

verification_report run_suites(const suite_config& config, value_cache* cache) {
    config.validate();

    std::vector<identity_instance> instances;
    auto expand = [&](const suite_def& def) {
        for (auto& inst : def.make(config.params)) instances.push_back(std::move(inst));
    };
    bool all = false;
    for (const std::string& id : config.suites) all = all || id == "all";
    if (all) {
        for (const auto& def : identity_registry()) expand(def);
    } else {
        for (const std::string& id : config.suites) expand(*find_suite(id));
    }

    if (cache) cache->freeze_baseline();
    const evaluator ev(cache);
    verification_report report;
    report.config = config;
    report.results.resize(instances.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= instances.size()) return;
            report.results[i] = run_instance(instances[i], ev, config.tol);
        }
    };
    const int nthreads = std::max(1, std::min<int>(config.workers,
                                                   static_cast<int>(instances.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::stable_sort(report.results.begin(), report.results.end(),
                     [](const verification_row& a, const verification_row& b) {
                         if (a.id != b.id) return a.id < b.id;
                         return a.params < b.params;
                     });
    for (const auto& row : report.results) (row.pass ? report.passed : report.failed) += 1;
    if (cache) cache->save();
    return report;
}

namespace {

json row_json(const verification_row& row) {
    json j;
    j["id"] = row.id;
    j["params"] = row.params;
    j["lhs"] = row.lhs;
    j["rhs"] = row.rhs;
    j["residual"] = row.residual;
    j["bound"] = row.bound;
    j["pass"] = row.pass;
    if (!row.note.empty()) j["note"] = row.note;
    j["ms"] = row.millis;
    return j;
}

json config_json(const suite_config& c) {
    json j;
    j["suites"] = c.suites;
    j["tol"] = to_decimal(c.tol, 3);
    j["workers"] = c.workers;
    if (c.params.p_max) j["p_max"] = *c.params.p_max;
    if (c.params.q_max) j["q_max"] = *c.params.q_max;
    if (c.params.w_max) j["w_max"] = *c.params.w_max;
    if (!c.params.lambdas.empty()) {
        std::vector<std::string> ls;
        for (const auto& l : c.params.lambdas) ls.push_back(to_string(l));
        j["lambda"] = ls;
    }
    j["seed"] = c.params.seed;
    return j;
}

}  // namespace

std::string verification_report::to_json() const {
    json j;
    j["report_version"] = report_version;
    j["config"] = config_json(config);
    j["results"] = json::array();
    for (const auto& row : results) j["results"].push_back(row_json(row));
    j["summary"] = {{"total", results.size()}, {"passed", passed}, {"failed", failed}};
    return j.dump(2);
}

std::string verification_report::to_csv() const {
    std::string out = "id,params,lhs,rhs,residual,bound,pass,ms\n";
    for (const auto& row : results) {
        out += row.id + "," + row.params + "," + row.lhs + "," + row.rhs + "," + row.residual +
               "," + row.bound + "," + (row.pass ? "1" : "0") + "," +
               std::to_string(row.millis) + "\n";
    }
    return out;
}

std::string verification_report::deterministic_fingerprint() const {
    std::string out;
    for (const auto& row : results) {
        out += row.id + "|" + row.params + "|" + row.lhs + "|" + row.rhs + "|" + row.residual +
               "|" + row.bound + "|" + (row.pass ? "1" : "0") + "|" + row.note + "\n";
    }
    return out;
}

void write_report_files(const verification_report& report) {
    if (!report.config.report_path.empty()) {
        std::ofstream out(report.config.report_path, std::ios::trunc);
        if (!out) throw error("cannot write report: " + report.config.report_path);
        out << report.to_json() << "\n";
    }
    if (!report.config.csv_path.empty()) {
        std::ofstream out(report.config.csv_path, std::ios::trunc);
        if (!out) throw error("cannot write csv: " + report.config.csv_path);
        out << report.to_csv();
    }
}

}  // namespace mzv
