#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include "mzv/cache.hpp"
#include "mzv/eval.hpp"

using namespace mzv;

namespace {

struct temp_file {
    std::string path;
    explicit temp_file(const std::string& name)
        : path((std::filesystem::temp_directory_path() / name).string()) {
        std::filesystem::remove(path);
    }
    ~temp_file() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("miss then store then hit") {
    temp_file f("mzv_test_cache1.jsonl");
    value_cache cache(f.path);
    const evaluator ev(&cache);

    const eval_result first = ev.eval_index(signed_index::of({1, 3}), real("1e-10"));
    CHECK_FALSE(first.cache_hit);
    const eval_result second = ev.eval_index(signed_index::of({1, 3}), real("1e-10"));
    CHECK(second.cache_hit);
    // served from the stored decimal string: equal up to reparse rounding
    CHECK(boost::multiprecision::abs(second.value - first.value) < real("1e-36"));
    CHECK(second.error_bound <= real("1e-10"));

    // tighter-or-equal stored tier serves looser requests
    const eval_result loose = ev.eval_index(signed_index::of({1, 3}), real("1e-5"));
    CHECK(loose.cache_hit);

    // tighter request than stored is a miss
    const eval_result tight = ev.eval_index(signed_index::of({1, 3}), real("1e-20"));
    CHECK_FALSE(tight.cache_hit);
    CHECK(boost::multiprecision::abs(tight.value - first.value) <= first.error_bound * 2);

    cache.save();
    CHECK(std::filesystem::exists(f.path));
    value_cache reloaded(f.path);
    CHECK(reloaded.size() == cache.size());
    CHECK(reloaded.lookup("z(1,3)", 2).has_value());
    CHECK(reloaded.tier_counts().at(2) >= 1);
}

TEST_CASE("store is idempotent") {
    value_cache cache;
    cache.store("z(2)", 2, "1.5", "1e-12");
    cache.store("z(2)", 2, "different", "1e-12");
    CHECK(cache.size() == 1);
    CHECK(cache.lookup("z(2)", 2)->value == "1.5");
    CHECK_FALSE(cache.lookup("z(2)", 3).has_value());
}

TEST_CASE("corrupt file raises with the line number") {
    temp_file f("mzv_test_cache2.jsonl");
    {
        std::ofstream out(f.path);
        out << R"json({"idx":"z(2)","tier":1,"value":"1.6449","err":"1e-6"})json" << "\n";
        out << "not json at all\n";
    }
    try {
        value_cache cache(f.path);
        CHECK(false);
    } catch (const cache_corrupt& e) {
        CHECK(e.line == 2);
    }

    value_cache::load_stats stats;
    value_cache salvaged(f.path, value_cache::salvage, stats);
    CHECK(stats.dropped_lines == 1);
    CHECK(stats.first_bad_line == 2);
    CHECK(salvaged.size() == 1);
}

TEST_CASE("rebuild re-verifies entries and drops fabrications") {
    temp_file f("mzv_test_cache3.jsonl");
    {
        value_cache cache(f.path);
        const evaluator ev(&cache);
        ev.eval_index(signed_index::of({2}), real("1e-10"));
        ev.eval_star(signed_index::of({1, 2}, true), real("1e-10"));
        cache.store("z(3)", 1, "9.99", "1e-6");  // wrong on purpose
        cache.save();
    }
    // entries: z(2), zs(1,2), its expansion leaves z(1,2), z(3), plus the fake
    value_cache cache(f.path);
    const auto rep = cache.rebuild(evaluator{});
    CHECK(rep.checked == 5);
    CHECK(rep.mismatched == 1);
    value_cache reloaded(f.path);
    CHECK(reloaded.size() == 4);
}

TEST_CASE("concurrent duplicate stores resolve idempotently") {
    temp_file f("mzv_test_cache4.jsonl");
    value_cache cache(f.path);
    std::vector<std::thread> pool;
    for (int t = 0; t < 8; ++t)
        pool.emplace_back([&cache] {
            const evaluator ev(&cache);
            for (int i = 0; i < 20; ++i)
                ev.eval_index(signed_index::of({2, 3}), real("1e-10"));
        });
    for (auto& th : pool) th.join();
    CHECK(cache.size() == 1);
}
