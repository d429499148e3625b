#pragma once

// Group sources: Cayley-table and permutation files, the family-spec
// mini-language, and the Cayley writer.
//
//   cayley n [p]        followed by n rows of n 0-based indices
//   perm k              followed by one generator per line, cycles on 1..k
//   action m n          m rows of n indices: the image table of each element
//                       of H on N (used by sdp)
//
// Blank lines and lines starting with '#' are ignored.

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "soclelab/constructions.hpp"
#include "soclelab/errors.hpp"
#include "soclelab/fp_linalg.hpp"
#include "soclelab/group.hpp"

namespace soclelab {

class parse_error : public invalid_input {
 public:
  parse_error(const std::string& source, std::size_t line, std::size_t column, const std::string& what)
      : invalid_input(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct GroupSource {
  std::string descriptor;
  FiniteGroup group;
  std::optional<std::uint32_t> suggested_p;  // from a "cayley n p" header
  bool central_product = false;              // factors commute elementwise and generate
  std::vector<GroupSource> factors;          // direct or central factors, when known
};

namespace detail {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

/// Splits a stream into lines of whitespace-separated tokens, skipping
/// comments and blank lines.
class TokenLines {
 public:
  TokenLines(std::istream& in, std::string source) : source_(std::move(source)) {
    std::string raw;
    std::size_t ln = 0;
    while (std::getline(in, raw)) {
      ++ln;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      std::size_t first = raw.find_first_not_of(" \t");
      if (first == std::string::npos || raw[first] == '#') continue;
      lines_.push_back({ln, raw});
    }
  }
  const std::string& source() const { return source_; }
  std::size_t size() const { return lines_.size(); }
  std::size_t line_number(std::size_t i) const { return lines_[i].first; }
  const std::string& text(std::size_t i) const { return lines_[i].second; }

  std::vector<Token> tokens(std::size_t i) const {
    std::vector<Token> out;
    const std::string& s = lines_[i].second;
    std::size_t pos = 0;
    while (pos < s.size()) {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos >= s.size()) break;
      std::size_t start = pos;
      while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      out.push_back({s.substr(start, pos - start), lines_[i].first, start + 1});
    }
    return out;
  }

  [[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& what) const {
    throw parse_error(source_, line, column, what);
  }

  std::size_t number(const Token& t, std::size_t limit, const char* what) const {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
      fail(t.line, t.column, std::string("expected ") + what + ", got '" + t.text + "'");
    if (v >= limit) fail(t.line, t.column, std::string(what) + " " + t.text + " out of range");
    return v;
  }

  /// Reads `rows` lines of exactly `cols` indices below `limit`, starting at line `first`.
  std::vector<std::vector<Elem>> matrix(std::size_t first, std::size_t rows, std::size_t cols, std::size_t limit) const {
    if (size() < first + rows) {
      const std::size_t ln = size() ? line_number(size() - 1) + 1 : 1;
      fail(ln, 1, "expected " + std::to_string(rows) + " rows, found " + std::to_string(size() - first));
    }
    if (size() > first + rows) fail(line_number(first + rows), 1, "unexpected extra row");
    std::vector<std::vector<Elem>> out(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      auto toks = tokens(first + r);
      if (toks.size() != cols)
        fail(line_number(first + r), toks.size() > cols ? toks[cols].column : text(first + r).size() + 1,
             "expected " + std::to_string(cols) + " entries, found " + std::to_string(toks.size()));
      for (const auto& t : toks) out[r].push_back(static_cast<Elem>(number(t, limit, "element index")));
    }
    return out;
  }

 private:
  std::string source_;
  std::vector<std::pair<std::size_t, std::string>> lines_;
};

inline std::vector<Token> header(const TokenLines& tl, const char* keyword, std::size_t min_args, std::size_t max_args) {
  if (tl.size() == 0) tl.fail(1, 1, "empty input");
  auto toks = tl.tokens(0);
  if (toks[0].text != keyword) tl.fail(toks[0].line, toks[0].column, std::string("expected '") + keyword + "'");
  if (toks.size() < 1 + min_args || toks.size() > 1 + max_args)
    tl.fail(toks[0].line, toks[0].column, std::string("malformed '") + keyword + "' header");
  return toks;
}

inline std::vector<std::uint32_t> parse_cycles(const TokenLines& tl, std::size_t i, std::size_t degree) {
  const std::string& s = tl.text(i);
  const std::size_t ln = tl.line_number(i);
  Perm perm(degree);
  for (std::size_t x = 0; x < degree; ++x) perm[x] = static_cast<std::uint32_t>(x);
  std::vector<char> used(degree, 0);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  skip();
  while (pos < s.size()) {
    if (s[pos] != '(') tl.fail(ln, pos + 1, "expected '('");
    ++pos;
    std::vector<std::uint32_t> cycle;
    for (;;) {
      skip();
      if (pos >= s.size()) tl.fail(ln, pos + 1, "unterminated cycle");
      if (s[pos] == ')') {
        ++pos;
        break;
      }
      if (s[pos] == ',') {
        ++pos;
        continue;
      }
      const std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) tl.fail(ln, start + 1, std::string("unexpected character '") + s[start] + "'");
      std::size_t v = 0;
      std::from_chars(s.data() + start, s.data() + pos, v);
      if (v < 1 || v > degree) tl.fail(ln, start + 1, "point " + s.substr(start, pos - start) + " outside 1.." + std::to_string(degree));
      if (used[v - 1]) tl.fail(ln, start + 1, "point " + std::to_string(v) + " repeated");
      used[v - 1] = 1;
      cycle.push_back(static_cast<std::uint32_t>(v - 1));
    }
    for (std::size_t j = 0; j < cycle.size(); ++j) perm[cycle[j]] = cycle[(j + 1) % cycle.size()];
    skip();
  }
  return perm;
}

}  // namespace detail

inline GroupSource read_cayley(std::istream& in, const std::string& source, GroupOptions opts = {}) {
  detail::TokenLines tl(in, source);
  auto h = detail::header(tl, "cayley", 1, 2);
  const std::size_t n = tl.number(h[1], std::size_t(-1), "group order");
  if (n == 0) tl.fail(h[1].line, h[1].column, "group order must be positive");
  if (n > opts.max_order)
    throw unsupported_input(source + ": group order " + std::to_string(n) + " exceeds the order cap " +
                            std::to_string(opts.max_order));
  GroupSource out;
  out.descriptor = source;
  if (h.size() == 3) {
    const std::size_t p = tl.number(h[2], std::size_t(1) << 31, "prime");
    if (!is_prime(static_cast<std::uint32_t>(p))) tl.fail(h[2].line, h[2].column, "'" + h[2].text + "' is not prime");
    out.suggested_p = static_cast<std::uint32_t>(p);
  }
  auto rows = tl.matrix(1, n, n, n);
  try {
    out.group = FiniteGroup::from_table(rows, opts);
  } catch (const invalid_input& e) {
    throw invalid_input(source + ": " + e.what());
  }
  return out;
}

inline GroupSource read_perm(std::istream& in, const std::string& source, GroupOptions opts = {}) {
  detail::TokenLines tl(in, source);
  auto h = detail::header(tl, "perm", 1, 1);
  const std::size_t k = tl.number(h[1], 1u << 16, "degree");
  std::vector<Perm> gens;
  for (std::size_t i = 1; i < tl.size(); ++i) gens.push_back(detail::parse_cycles(tl, i, k));
  GroupSource out;
  out.descriptor = source;
  out.group = permutation_closure(gens, k, opts).group;
  return out;
}

/// Image tables of H acting on N, one row per element of H.
inline std::vector<std::vector<Elem>> read_action(std::istream& in, const std::string& source) {
  detail::TokenLines tl(in, source);
  auto h = detail::header(tl, "action", 2, 2);
  const std::size_t m = tl.number(h[1], 1u << 20, "number of rows");
  const std::size_t n = tl.number(h[2], 1u << 20, "row length");
  return tl.matrix(1, m, n, n);
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw invalid_input(path + ": cannot open file");
  return f;
}

inline GroupSource load_group_file(const std::string& path, GroupOptions opts = {}) {
  std::ifstream f = open_input(path);
  std::string word;
  // Peek at the first keyword, skipping comments.
  std::string line;
  std::stringstream all;
  all << f.rdbuf();
  std::istringstream scan(all.str());
  while (std::getline(scan, line)) {
    std::istringstream ls(line);
    if ((ls >> word) && word[0] != '#') break;
    word.clear();
  }
  std::istringstream body(all.str());
  if (word == "cayley") return read_cayley(body, path, opts);
  if (word == "perm") return read_perm(body, path, opts);
  throw parse_error(path, 1, 1, "expected a 'cayley' or 'perm' header");
}

inline void write_cayley(std::ostream& out, const FiniteGroup& g, std::optional<std::uint32_t> p = std::nullopt) {
  out << "cayley " << g.order();
  if (p) out << ' ' << *p;
  out << '\n';
  for (Elem a = 0; a < g.order(); ++a) {
    for (Elem b = 0; b < g.order(); ++b) {
      if (b) out << ' ';
      out << g.mul(a, b);
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Family specs.

namespace detail {

struct SpecNode {
  std::string name;
  std::size_t column = 0;
  bool call = false;
  std::vector<SpecNode> args;
};

class SpecParser {
 public:
  explicit SpecParser(std::string text) : s_(std::move(text)) {}

  SpecNode parse() {
    SpecNode n = node();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

  [[noreturn]] void fail(const std::string& what) const { throw parse_error("spec", 1, pos_ + 1, what); }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  SpecNode node() {
    skip();
    SpecNode n;
    n.column = pos_ + 1;
    while (pos_ < s_.size() && s_[pos_] != '(' && s_[pos_] != ')' && s_[pos_] != ',') n.name.push_back(s_[pos_++]);
    while (!n.name.empty() && std::isspace(static_cast<unsigned char>(n.name.back()))) n.name.pop_back();
    if (n.name.empty()) fail("expected a name");
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      n.call = true;
      ++pos_;
      skip();
      if (pos_ < s_.size() && s_[pos_] == ')') {
        ++pos_;
        return n;
      }
      for (;;) {
        n.args.push_back(node());
        skip();
        if (pos_ >= s_.size()) fail("missing ')'");
        if (s_[pos_] == ')') {
          ++pos_;
          break;
        }
        if (s_[pos_] != ',') fail("expected ',' or ')'");
        ++pos_;
      }
    }
    return n;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

inline std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline std::string render(const SpecNode& n) {
  std::string out = n.name;
  if (n.call) {
    out += '(';
    for (std::size_t i = 0; i < n.args.size(); ++i) {
      if (i) out += ",";
      out += render(n.args[i]);
    }
    out += ')';
  }
  return out;
}

inline std::optional<std::uint64_t> as_number(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

class SpecBuilder {
 public:
  explicit SpecBuilder(GroupOptions opts) : opts_(opts) {}

  GroupSource build(const SpecNode& n) {
    GroupSource out;
    out.descriptor = render(n);
    const std::string name = lower(n.name);
    auto num = [&](std::size_t i) -> std::uint64_t {
      if (i >= n.args.size()) err(n, "missing argument " + std::to_string(i + 1));
      auto v = as_number(n.args[i].name);
      if (!v || n.args[i].call) err(n.args[i], "expected a number");
      return *v;
    };
    auto arity = [&](std::size_t k) {
      if (n.args.size() != k) err(n, n.name + " takes " + std::to_string(k) + " argument(s)");
    };
    if (!n.call) {
      if (std::filesystem::exists(n.name)) return load_group_file(n.name, opts_);
      out.group = shorthand(n, name);
    } else if (name == "cyclic" || name == "c") {
      arity(1);
      out.group = cyclic_group(num(0), opts_);
    } else if (name == "dihedral" || name == "d") {
      arity(1);
      out.group = dihedral_group(num(0), opts_);
    } else if (name == "quaternion" || name == "q") {
      arity(1);
      out.group = quaternion_group(num(0), opts_);
    } else if (name == "dicyclic") {
      arity(1);
      out.group = dicyclic_group(num(0), opts_);
    } else if (name == "elementary_abelian") {
      arity(2);
      out.group = elementary_abelian_group(prime(n, num(0)), static_cast<std::uint32_t>(num(1)), opts_);
    } else if (name == "extraspecial") {
      arity(2);
      const std::string t = n.args[1].name;
      if (t != "+" && t != "-") err(n.args[1], "expected '+' or '-'");
      out.group = extraspecial_group(prime(n, num(0)), t == "+", opts_);
    } else if (name == "agl") {
      arity(2);
      if (num(0) != 1) err(n.args[0], "only AGL(1,q) is supported");
      out.group = agl1_group(num(1), opts_);
    } else if (name == "sl2") {
      arity(1);
      out.group = sl2_group(prime(n, num(0)), opts_);
    } else if (name == "symmetric" || name == "s") {
      arity(1);
      out.group = symmetric_group(num(0), opts_);
    } else if (name == "alternating" || name == "a") {
      arity(1);
      out.group = alternating_group(num(0), opts_);
    } else if (name == "direct" || name == "direct_product") {
      if (n.args.size() < 2) err(n, "direct needs at least two factors");
      std::vector<FiniteGroup> parts;
      for (const auto& a : n.args) {
        out.factors.push_back(build(a));
        parts.push_back(out.factors.back().group);
      }
      out.group = direct_product(parts, opts_);
      out.central_product = true;
    } else if (name == "central" || name == "central_product") {
      arity(2);
      out.factors.push_back(build(n.args[0]));
      out.factors.push_back(build(n.args[1]));
      out.group = central_product_of_centers(out.factors[0].group, out.factors[1].group, opts_);
      out.central_product = true;
    } else if (name == "sdp") {
      arity(3);
      GroupSource N = build(n.args[0]);
      GroupSource H = build(n.args[1]);
      auto f = open_input(n.args[2].name);
      auto action = read_action(f, n.args[2].name);
      out.group = semidirect_product(N.group, H.group, action, opts_);
    } else if (name == "fpf") {
      arity(2);
      GroupSource N = build(n.args[0]);
      out.group = fpf_extension(N.group, num(1), opts_);
    } else if (name == "classtwo") {
      arity(2);
      out.group = classtwo_group(num(0), static_cast<std::uint32_t>(num(1)), opts_);
    } else {
      err(n, "unknown family '" + n.name + "'");
    }
    return out;
  }

 private:
  [[noreturn]] static void err(const SpecNode& n, const std::string& what) {
    throw parse_error("spec", 1, n.column, what);
  }

  static std::uint32_t prime(const SpecNode& n, std::uint64_t v) {
    if (v > (1u << 31) || !is_prime(static_cast<std::uint32_t>(v))) err(n, std::to_string(v) + " is not prime");
    return static_cast<std::uint32_t>(v);
  }

  FiniteGroup shorthand(const SpecNode& n, const std::string& name) {
    auto suffix = [&](std::size_t k) { return as_number(name.substr(k)); };
    if (name == "q8") return quaternion_group(8, opts_);
    if (name == "he3") return extraspecial_group(3, true, opts_);
    if (name == "trivial" || name == "1") return FiniteGroup{};
    if (name.size() > 1) {
      const char c = name[0];
      if (auto v = suffix(1)) {
        if (c == 'c') return cyclic_group(*v, opts_);
        if (c == 'd') return dihedral_group(*v, opts_);
        if (c == 'q') return quaternion_group(*v, opts_);
        if (c == 's') return symmetric_group(*v, opts_);
        if (c == 'a') return alternating_group(*v, opts_);
      }
    }
    err(n, "unknown group '" + n.name + "' (not a family name or an existing file)");
  }

  GroupOptions opts_;
};

}  // namespace detail

/// A family spec such as "AGL(1,8)", "central(SL2(3),Q8)", "direct(S3,C5)"
/// or the path of a group file.
inline GroupSource parse_group_spec(const std::string& spec, GroupOptions opts = {}) {
  detail::SpecParser parser(spec);
  detail::SpecNode root = parser.parse();
  GroupSource out = detail::SpecBuilder(opts).build(root);
  if (out.group.order() > opts.max_order)
    throw unsupported_input("group order " + std::to_string(out.group.order()) + " exceeds the order cap " +
                            std::to_string(opts.max_order));
  return out;
}

}  // namespace soclelab
