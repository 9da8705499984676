#include "ua/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace ua::io {

namespace {

struct Word {
  std::string text;
  std::size_t line;
  std::size_t column;
};

/// One non-empty line with '#' comments removed, split into words.
struct Line {
  std::size_t number;
  std::string text;  // comment-free
  std::vector<Word> words;

  /// Everything after the first word.
  std::string rest() const {
    if (words.empty()) return {};
    return text.substr(words[0].column - 1 + words[0].text.size());
  }
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string raw(text.substr(start, end - start));
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    Line line{number, raw, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      if (j > i) line.words.push_back({raw.substr(i, j - i), number, i + 1});
      i = j;
    }
    if (!line.words.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

[[noreturn]] void fail(const Word& w, const std::string& msg) { throw ParseError(msg, w.line, w.column); }

std::size_t to_number(const Word& w, const std::string& what) {
  std::size_t value = 0;
  const char* first = w.text.data();
  const char* last = first + w.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) fail(w, "expected " + what + ", found '" + w.text + "'");
  return value;
}

void expect_words(const Line& line, std::size_t count, const std::string& usage) {
  if (line.words.size() != count) fail(line.words[0], "expected '" + usage + "'");
}

/// Reads `count` integers in [0, bound) starting at line `i`, advancing `i`.
std::vector<std::size_t> read_table(const std::vector<Line>& lines, std::size_t& i, std::size_t count,
                                    std::size_t bound, const Word& owner) {
  std::vector<std::size_t> out;
  out.reserve(count);
  while (out.size() < count) {
    if (i >= lines.size())
      fail(owner, "table for '" + owner.text + "' needs " + std::to_string(count) +
                      " entries, found " + std::to_string(out.size()));
    for (const auto& w : lines[i].words) {
      if (out.size() == count) fail(w, "too many table entries for '" + owner.text + "'");
      const std::size_t v = to_number(w, "table entry");
      if (v >= bound)
        fail(w, "table entry " + w.text + " out of range for size " + std::to_string(bound));
      out.push_back(v);
    }
    ++i;
  }
  return out;
}

std::size_t power(std::size_t n, std::size_t k) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < k; ++i) out *= n;
  return out;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FiniteAlgebra parse_algebra(std::string_view text) {
  const auto lines = split_lines(text);
  std::string name;
  std::optional<std::size_t> size, tuple_length;
  std::vector<OperationSymbol> symbols;
  std::vector<std::vector<Element>> tables;
  std::optional<Line> zero_line, one_line;

  for (std::size_t i = 0; i < lines.size();) {
    const Line& line = lines[i];
    const Word& head = line.words[0];
    if (head.text == "algebra") {
      expect_words(line, 2, "algebra NAME");
      name = line.words[1].text;
      ++i;
    } else if (head.text == "size") {
      expect_words(line, 2, "size N");
      size = to_number(line.words[1], "universe size");
      if (*size == 0) fail(line.words[1], "universe must be nonempty");
      ++i;
    } else if (head.text == "tuple-length") {
      expect_words(line, 2, "tuple-length K");
      tuple_length = to_number(line.words[1], "tuple length");
      ++i;
    } else if (head.text == "op") {
      if (line.words.size() < 3) fail(head, "expected 'op NAME ARITY'");
      if (!size) fail(head, "'size' must precede operation tables");
      const Word& sym = line.words[1];
      for (const auto& s : symbols)
        if (s.name == sym.text) fail(sym, "duplicate operation symbol '" + sym.text + "'");
      const std::size_t arity = to_number(line.words[2], "arity");
      symbols.push_back({sym.text, arity});
      // Entries may start on the op line itself.
      std::vector<Line> window{line};
      window[0].words.erase(window[0].words.begin(), window[0].words.begin() + 3);
      std::size_t have = window[0].words.size(), j = i + 1;
      const std::size_t count = power(*size, arity);
      while (have < count && j < lines.size()) {
        window.push_back(lines[j]);
        have += lines[j++].words.size();
      }
      std::size_t k = 0;
      const auto entries = read_table(window, k, count, *size, sym);
      tables.emplace_back(entries.begin(), entries.end());
      i = j;
    } else if (head.text == "zero") {
      zero_line = line;
      ++i;
    } else if (head.text == "one") {
      one_line = line;
      ++i;
    } else {
      fail(head, "unknown directive '" + head.text + "'");
    }
  }
  if (!size) throw ParseError("missing 'size' directive", 0, 0);
  if (!zero_line || !one_line) throw ParseError("missing 'zero' or 'one' directive", 0, 0);

  const auto plain = Signature::symbols_only(symbols);
  auto terms = [&](const Line& line) {
    try {
      return parse_term_list(line.rest(), plain);
    } catch (const ParseError& e) {
      // Re-anchor the column to the file line.
      const std::size_t offset = line.words[0].column + line.words[0].text.size() - 1;
      throw ParseError(e.message(), line.number, e.column() + offset);
    }
  };
  auto zero = terms(*zero_line);
  auto one = terms(*one_line);
  const std::size_t k = tuple_length.value_or(zero.size());
  if (zero.size() != k)
    fail(zero_line->words[0], "zero has " + std::to_string(zero.size()) + " terms, tuple length is " +
                                  std::to_string(k));
  if (one.size() != k)
    fail(one_line->words[0], "one has " + std::to_string(one.size()) + " terms, tuple length is " +
                                 std::to_string(k));
  try {
    auto sig = std::make_shared<const Signature>(symbols, std::move(zero), std::move(one));
    return FiniteAlgebra(std::move(sig), *size, std::move(tables), name);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

FiniteAlgebra load_algebra(const std::filesystem::path& path) {
  try {
    return parse_algebra(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + (e.line() ? ":" : ": ") + e.what(), 0, 0);
  }
}

std::string write_algebra(const FiniteAlgebra& a) {
  std::ostringstream out;
  if (!a.name().empty()) out << "algebra " << a.name() << "\n";
  out << "size " << a.size() << "\n";
  out << "tuple-length " << a.tuple_length() << "\n";
  const auto& sig = a.signature();
  for (std::size_t s = 0; s < sig.symbols().size(); ++s) {
    const auto& sym = sig.symbol(s);
    out << "op " << sym.name << " " << sym.arity << "\n";
    const auto table = a.table(s);
    const std::size_t row = sym.arity == 0 ? 1 : a.size();
    for (std::size_t i = 0; i < table.size(); ++i)
      out << table[i] << ((i + 1) % row == 0 ? "\n" : " ");
  }
  out << "zero";
  for (const auto& t : sig.zero_terms()) out << " " << to_string(t);
  out << "\none";
  for (const auto& t : sig.one_terms()) out << " " << to_string(t);
  out << "\n";
  return out.str();
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& name) {
  auto p = base / name;
  if (!std::filesystem::exists(p) && std::filesystem::exists(base / (name + ".alg")))
    p = base / (name + ".alg");
  return p;
}

}  // namespace

Homomorphism parse_homomorphism(std::string_view text, const std::filesystem::path& base_dir) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0].words[0].text != "hom" || lines[0].words.size() != 3)
    throw ParseError("expected 'hom SRC DST'", lines.empty() ? 0 : lines[0].number, 1);
  auto source = load_algebra(resolve(base_dir, lines[0].words[1].text));
  auto target = load_algebra(resolve(base_dir, lines[0].words[2].text));
  if (!source.same_signature(target)) fail(lines[0].words[0], "source and target signatures differ");
  std::vector<std::optional<Element>> map(source.size());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& w = lines[i].words;
    if (w.size() != 3 || w[1].text != "->") fail(w[0], "expected 'i -> j'");
    const std::size_t from = to_number(w[0], "source element");
    const std::size_t to = to_number(w[2], "target element");
    if (from >= source.size()) fail(w[0], "source element out of range");
    if (to >= target.size()) fail(w[2], "target element out of range");
    if (map[from]) fail(w[0], "element " + w[0].text + " mapped twice");
    map[from] = static_cast<Element>(to);
  }
  std::vector<Element> out;
  for (std::size_t x = 0; x < map.size(); ++x) {
    if (!map[x]) throw ParseError("element " + std::to_string(x) + " has no image", 0, 0);
    out.push_back(*map[x]);
  }
  return Homomorphism{std::move(source), std::move(target), std::move(out)};
}

Homomorphism load_homomorphism(const std::filesystem::path& path) {
  const auto text = read_file(path);
  try {
    return parse_homomorphism(text, path.parent_path());
  } catch (const ParseError& e) {
    if (e.line() == 0) throw;
    throw ParseError(path.string() + (e.line() ? ":" : ": ") + e.what(), 0, 0);
  }
}

FiniteLatticeSite parse_lattice(std::string_view text) {
  const auto lines = split_lines(text);
  std::string name;
  std::optional<std::size_t> size;
  std::vector<std::size_t> meet, join;
  for (std::size_t i = 0; i < lines.size();) {
    const Line& line = lines[i];
    const Word& head = line.words[0];
    if (head.text == "lattice") {
      expect_words(line, 2, "lattice NAME");
      name = line.words[1].text;
      ++i;
    } else if (head.text == "size") {
      expect_words(line, 2, "size N");
      size = to_number(line.words[1], "lattice size");
      if (*size == 0) fail(line.words[1], "lattice must be nonempty");
      ++i;
    } else if (head.text == "meet" || head.text == "join") {
      expect_words(line, 1, head.text);
      if (!size) fail(head, "'size' must precede the tables");
      ++i;
      auto table = read_table(lines, i, *size * *size, *size, head);
      (head.text == "meet" ? meet : join) = std::move(table);
    } else {
      fail(head, "unknown directive '" + head.text + "'");
    }
  }
  if (!size || meet.empty() || join.empty())
    throw ParseError("lattice needs 'size', 'meet' and 'join'", 0, 0);
  try {
    return FiniteLatticeSite(*size, std::move(meet), std::move(join), name);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

FiniteLatticeSite load_lattice(const std::filesystem::path& path) {
  try {
    return parse_lattice(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + (e.line() ? ":" : ": ") + e.what(), 0, 0);
  }
}

Formula load_formula(const std::filesystem::path& path, const Signature& sig) {
  const auto text = read_file(path);
  try {
    return parse_formula(text, sig);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + (e.line() ? ":" : ": ") + e.what(), 0, 0);
  }
}

}  // namespace ua::io
