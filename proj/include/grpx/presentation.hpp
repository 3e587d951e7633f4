#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "grpx/word.hpp"

namespace grpx {

struct Presentation {
  std::string name;
  std::vector<std::string> gens;
  std::vector<Word> relators;
  std::optional<uint64_t> expected_order;

  int gen_index(const std::string& n) const;  // -1 if unknown
  std::string to_pres() const;
};

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at line " + std::to_string(line_) + ", column " +
                           std::to_string(col_)),
        line(line_),
        col(col_) {}
};

Presentation parse_presentation(const std::string& text);

/// Parse one word in the presentation's generators (the `.pres` word
/// grammar: juxtaposition, `^` integer powers, `-` inverse suffix,
/// parentheses).
Word parse_word(const Presentation& p, const std::string& text, int line_no = 1);

}  // namespace grpx
