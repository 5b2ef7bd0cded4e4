#pragma once

#include <stdexcept>
#include <string>

namespace mzv {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Word/index encoding errors.
struct signed_word_unsupported : error {
    using error::error;
};
struct non_admissible_word : error {
    using error::error;
};

// Parser error with byte offset into the input.
struct parse_error : error {
    std::size_t position;
    parse_error(std::size_t pos, const std::string& what)
        : error("parse error at position " + std::to_string(pos) + ": " + what),
          position(pos) {}
};

struct empty_range : error {
    using error::error;
};
struct index_out_of_range : error {
    using error::error;
};
struct parameter_out_of_range : error {
    using error::error;
};
struct precondition_violated : error {
    using error::error;
};

// Algebra errors.
struct divergent_term : error {
    using error::error;
};

// Evaluator errors.
struct divergent_index : error {
    using error::error;
};
struct precision_unreachable : error {
    using error::error;
};

// Cache errors; line is 1-based into the cache file.
struct cache_corrupt : error {
    std::size_t line;
    cache_corrupt(std::size_t line_no, const std::string& what)
        : error("cache corrupt at line " + std::to_string(line_no) + ": " + what),
          line(line_no) {}
};

}  // namespace mzv
