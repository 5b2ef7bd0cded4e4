#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mzv/identities.hpp"
#include "mzv/real.hpp"

namespace mzv {

class value_cache;

struct suite_config {
    std::vector<std::string> suites{"all"};
    suite_params params;
    real tol = real("1e-10");
    int workers = 4;
    std::string cache_path;
    std::string report_path;
    std::string csv_path;

    void validate() const;  // tolerance window, ranges, known suite ids
};

struct verification_row {
    std::string id;
    std::string params;
    std::string lhs;       // decimal value, or "exact" for symbolic checks
    std::string rhs;
    std::string residual;  // |lhs - rhs| (0 for symbolic checks)
    std::string bound;     // combined error bound
    bool pass = false;
    std::string note;      // error text when an instance failed to run
    double millis = 0;
};

struct verification_report {
    int report_version = 1;
    suite_config config;
    std::vector<verification_row> results;
    std::size_t passed = 0;
    std::size_t failed = 0;

    std::string to_json() const;
    std::string to_csv() const;
    // Everything except timing; two runs with the same config must agree.
    std::string deterministic_fingerprint() const;
};

// Runs one instance at the given tolerance.
verification_row run_instance(const identity_instance& inst, const evaluator& ev,
                              const real& tol);

// Expands the configured suites and runs them on a bounded worker pool.
verification_report run_suites(const suite_config& config, value_cache* cache = nullptr);

// Writes report/CSV files when paths are set in the config.
void write_report_files(const verification_report& report);

}  // namespace mzv
