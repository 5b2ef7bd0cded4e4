#include "mzv/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mzv/eval.hpp"
#include "mzv/index.hpp"

namespace mzv {

namespace {

using nlohmann::json;

std::optional<std::pair<std::pair<std::string, int>, value_cache::entry>> parse_line(
    const std::string& line) {
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    if (!j.contains("idx") || !j.contains("tier") || !j.contains("value") || !j.contains("err"))
        return std::nullopt;
    if (!j["idx"].is_string() || !j["tier"].is_number_integer() || !j["value"].is_string() ||
        !j["err"].is_string())
        return std::nullopt;
    const int tier = j["tier"].get<int>();
    if (tier < 1 || tier > 64) return std::nullopt;
    return std::make_pair(std::make_pair(j["idx"].get<std::string>(), tier),
                          value_cache::entry{j["value"].get<std::string>(),
                                             j["err"].get<std::string>()});
}

std::string format_line(const std::pair<std::string, int>& key, const value_cache::entry& e) {
    json j;
    j["idx"] = key.first;
    j["tier"] = key.second;
    j["value"] = e.value;
    j["err"] = e.err;
    return j.dump();
}

}  // namespace

value_cache::value_cache(std::string path) : path_(std::move(path)) {
    load_file(nullptr);
}

value_cache::value_cache(std::string path, salvage_t, load_stats& stats)
    : path_(std::move(path)) {
    load_file(&stats);
}

void value_cache::load_file(load_stats* stats) {
    if (path_.empty() || !std::filesystem::exists(path_)) return;
    std::ifstream in(path_);
    if (!in) throw error("cannot open cache file: " + path_);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto parsed = parse_line(line);
        if (!parsed) {
            if (!stats) throw cache_corrupt(line_no, "malformed record");
            ++stats->dropped_lines;
            if (stats->first_bad_line == 0) stats->first_bad_line = line_no;
            continue;
        }
        entries_[parsed->first] = parsed->second;
    }
}

std::optional<value_cache::entry> value_cache::lookup(const std::string& key, int tier) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto exact = entries_.find({key, tier});
    if (exact != entries_.end()) return exact->second;
    if (frozen_) {
        auto base = baseline_.find(key);
        if (base != baseline_.end() && base->second >= tier)
            return entries_.at({key, base->second});
        return std::nullopt;
    }
    // Entries are ordered by (key, tier); take the tightest stored tier >= tier.
    auto it = entries_.lower_bound({key, tier});
    std::optional<entry> best;
    for (; it != entries_.end() && it->first.first == key; ++it) best = it->second;
    return best;
}

void value_cache::freeze_baseline() {
    std::lock_guard<std::mutex> lock(mu_);
    baseline_.clear();
    for (const auto& [key, e] : entries_) {
        auto [it, inserted] = baseline_.emplace(key.first, key.second);
        if (!inserted) it->second = std::max(it->second, key.second);
    }
    frozen_ = true;
}

void value_cache::store(const std::string& key, int tier, const std::string& value,
                        const std::string& err) {
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = entries_.emplace(std::make_pair(key, tier), entry{value, err});
    if (!inserted) return;  // idempotent
    if (!path_.empty() && ++unsaved_ >= flush_interval) save_locked();
}

void value_cache::save() {
    std::lock_guard<std::mutex> lock(mu_);
    save_locked();
}

void value_cache::save_locked() {
    if (path_.empty()) return;
    const std::string tmp = path_ + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw error("cannot write cache file: " + tmp);
        for (const auto& [key, e] : entries_) out << format_line(key, e) << "\n";
    }
    std::filesystem::rename(tmp, path_);
    unsaved_ = 0;
}

std::size_t value_cache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return entries_.size();
}

std::map<int, std::size_t> value_cache::tier_counts() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::map<int, std::size_t> counts;
    for (const auto& [key, e] : entries_) ++counts[key.second];
    return counts;
}

value_cache::rebuild_report value_cache::rebuild(const evaluator& ev) {
    rebuild_report rep;
    std::lock_guard<std::mutex> lock(mu_);
    evaluator fresh_ev(nullptr, ev.options());  // bypass the cache being checked
    for (auto it = entries_.begin(); it != entries_.end();) {
        const auto& [key, tier] = it->first;
        ++rep.checked;
        bool ok = false;
        try {
            const signed_index idx = parse_index(key);
            const eval_result fresh = idx.starred()
                                          ? fresh_ev.eval_star(idx, tier_tolerance(tier))
                                          : fresh_ev.eval_index(idx, tier_tolerance(tier));
            const real stored(it->second.value);
            const real stored_err(it->second.err);
            ok = boost::multiprecision::abs(stored - fresh.value) <=
                 stored_err + fresh.error_bound;
        } catch (const error&) {
            ok = false;
        }
        if (ok) {
            ++it;
        } else {
            ++rep.mismatched;
            it = entries_.erase(it);
        }
    }
    save_locked();
    return rep;
}

}  // namespace mzv
