#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mzv/errors.hpp"

namespace mzv {

class evaluator;

// Append-only persistent store of evaluated values, keyed by canonical index
// text and precision tier.  Entries never loosen a requested tolerance: a
// lookup only hits on a stored tier at least as tight as the request.
class value_cache {
  public:
    struct entry {
        std::string value;  // decimal string
        std::string err;    // decimal string, over-estimated bound
    };

    struct salvage_t {};
    static constexpr salvage_t salvage{};
    struct load_stats {
        std::size_t dropped_lines = 0;
        std::size_t first_bad_line = 0;  // 1-based, 0 if none
    };

    value_cache() = default;  // memory-only
    explicit value_cache(std::string path);  // loads if the file exists
    // Tolerant load: keeps what parses, reports what was dropped.
    value_cache(std::string path, salvage_t, load_stats& stats);

    // Best stored entry with tier >= requested; nullopt on miss.  After
    // freeze_baseline(), looser-keyed fallback is limited to entries present
    // at freeze time, so concurrent runs serve scheduling-independent results.
    std::optional<entry> lookup(const std::string& key, int tier) const;

    void freeze_baseline();

    // Idempotent; persists to the backing file (write-temp-then-rename)
    // every flush_interval inserts and on save().
    void store(const std::string& key, int tier, const std::string& value,
               const std::string& err);

    void save();

    const std::string& path() const { return path_; }
    std::size_t size() const;
    std::map<int, std::size_t> tier_counts() const;

    struct rebuild_report {
        std::size_t checked = 0;
        std::size_t mismatched = 0;
    };
    // Re-verifies every entry against fresh evaluation at its stored tier,
    // drops mismatches, rewrites the file.
    rebuild_report rebuild(const evaluator& ev);

  private:
    void load_file(load_stats* stats);
    void save_locked();

    using key_type = std::pair<std::string, int>;
    std::map<key_type, entry> entries_;
    std::map<std::string, int> baseline_;  // key -> max tier at freeze time
    bool frozen_ = false;
    std::string path_;
    std::size_t unsaved_ = 0;
    mutable std::mutex mu_;
    static constexpr std::size_t flush_interval = 256;
};

}  // namespace mzv
