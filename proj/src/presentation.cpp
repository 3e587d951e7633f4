#include "grpx/presentation.hpp"

#include <cctype>
#include <sstream>

namespace grpx {

int Presentation::gen_index(const std::string& n) const {
  for (size_t i = 0; i < gens.size(); ++i)
    if (gens[i] == n) return static_cast<int>(i);
  return -1;
}

std::string Presentation::to_pres() const {
  std::ostringstream os;
  os << "group " << (name.empty() ? "unnamed" : name) << "\n";
  os << "gens";
  for (const auto& g : gens) os << ' ' << g;
  os << "\n";
  for (const auto& r : relators) os << "rel " << r.str(gens) << "\n";
  if (expected_order) os << "order " << *expected_order << "\n";
  return os.str();
}

namespace {

// Recursive-descent word parser.
struct WordParser {
  const Presentation& p;
  const std::string& s;
  size_t i = 0;
  int line;

  WordParser(const Presentation& p_, const std::string& s_, int line_)
      : p(p_), s(s_), line(line_) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line, static_cast<int>(i) + 1);
  }

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  bool at_atom() {
    skip_ws();
    return i < s.size() &&
           (s[i] == '(' || std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_');
  }

  int parse_int() {
    skip_ws();
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      fail("expected integer");
    return std::stoi(s.substr(start, i - start));
  }

  Word parse_atom() {
    skip_ws();
    if (i >= s.size()) fail("expected word atom");
    if (s[i] == '(') {
      ++i;
      Word w = parse_word();
      skip_ws();
      if (i >= s.size() || s[i] != ')') fail("missing ')'");
      ++i;
      return w;
    }
    size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      ++i;
    if (i == start) fail("expected generator name");
    std::string nm = s.substr(start, i - start);
    int gi = p.gen_index(nm);
    if (gi < 0) fail("unknown generator '" + nm + "'");
    return Word::of_gen(gi);
  }

  Word parse_item() {
    Word a = parse_atom();
    skip_ws();
    // inverse suffix, then optional power
    while (i < s.size() && s[i] == '-' &&
           !(i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])) &&
             i > 0 && s[i - 1] == '^')) {
      a = a.inverse();
      ++i;
      skip_ws();
    }
    if (i < s.size() && s[i] == '^') {
      ++i;
      int e = parse_int();
      a = a.pow(e);
    }
    return a;
  }

  Word parse_word() {
    Word w;
    while (at_atom()) w = w * parse_item();
    return w;
  }
};

}  // namespace

Word parse_word(const Presentation& p, const std::string& text, int line_no) {
  WordParser wp(p, text, line_no);
  Word w = wp.parse_word();
  wp.skip_ws();
  if (wp.i != text.size()) wp.fail("trailing characters in word");
  return w;
}

Presentation parse_presentation(const std::string& text) {
  Presentation p;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  bool have_gens = false;
  while (std::getline(is, line)) {
    ++line_no;
    // strip comments
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "group") {
      if (!(ls >> p.name)) throw ParseError("group needs a name", line_no, 7);
    } else if (key == "gens") {
      std::string g;
      while (ls >> g) {
        if (p.gen_index(g) >= 0) throw ParseError("duplicate generator '" + g + "'", line_no, 1);
        p.gens.push_back(g);
      }
      if (p.gens.empty()) throw ParseError("gens line is empty", line_no, 1);
      have_gens = true;
    } else if (key == "rel") {
      if (!have_gens) throw ParseError("rel before gens", line_no, 1);
      std::string rest;
      std::getline(ls, rest);
      Word w = parse_word(p, rest, line_no);
      if (w.empty()) throw ParseError("empty relator", line_no, 1);
      p.relators.push_back(w);
    } else if (key == "order") {
      uint64_t n;
      if (!(ls >> n)) throw ParseError("order needs an integer", line_no, 1);
      p.expected_order = n;
    } else {
      throw ParseError("unknown directive '" + key + "'", line_no, 1);
    }
  }
  if (!have_gens) throw ParseError("presentation has no gens line", line_no, 1);
  if (p.relators.empty()) throw ParseError("presentation has no relators", line_no, 1);
  return p;
}

}  // namespace grpx
