#include "predim/text_format.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "predim/errors.hpp"

namespace predim {

std::vector<std::string> tokenize_line(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream in(body);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

namespace {

std::uint64_t parse_count(const std::string& tok, std::size_t line, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected a non-negative integer for ") + what + ", got '" +
                               tok + "'");
  return v;
}

struct PendingTuple {
  std::size_t line;
  std::string name;
  std::vector<Element> elements;
};

struct PendingAnnotation {
  std::size_t line;
  Element element;
  Annotation tokens;
};

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

FinStructure parse_structure(std::istream& in) {
  std::optional<std::size_t> n;
  TupleSemantics semantics = TupleSemantics::unordered_distinct;
  bool semantics_seen = false;
  std::vector<Symbol> symbols;
  std::vector<std::size_t> symbol_lines;
  std::vector<PendingTuple> tuples;
  std::vector<PendingAnnotation> annotations;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto tok = tokenize_line(raw);
    if (tok.empty()) continue;
    const std::string& dir = tok[0];
    if (!n && dir != "universe") throw ParseError(line, "expected 'universe <n>' first");
    if (dir == "universe") {
      if (n) throw ParseError(line, "repeated 'universe' line");
      if (tok.size() != 2) throw ParseError(line, "usage: universe <n>");
      n = parse_count(tok[1], line, "universe size");
      if (*n > kMaxUniverse)
        throw ParseError(line, "universe exceeds " + std::to_string(kMaxUniverse) + " elements");
    } else if (dir == "semantics") {
      if (semantics_seen || !symbols.empty())
        throw ParseError(line, "'semantics' must appear once, before any 'rel'");
      if (tok.size() != 2) throw ParseError(line, "usage: semantics ordered|unordered");
      if (tok[1] == "ordered") {
        semantics = TupleSemantics::ordered;
      } else if (tok[1] == "unordered") {
        semantics = TupleSemantics::unordered_distinct;
      } else {
        throw ParseError(line, "unknown semantics '" + tok[1] + "'");
      }
      semantics_seen = true;
    } else if (dir == "rel") {
      if (tok.size() != 4) throw ParseError(line, "usage: rel <name> <arity> <p>/<q>");
      if (!tuples.empty()) throw ParseError(line, "'rel' after the first 'tup'");
      Symbol sym;
      sym.name = tok[1];
      sym.arity = parse_count(tok[2], line, "arity");
      try {
        sym.weight = parse_rational(tok[3]);
      } catch (const Error& e) {
        throw ParseError(line, e.what());
      }
      symbols.push_back(sym);
      symbol_lines.push_back(line);
    } else if (dir == "tup") {
      if (tok.size() < 2) throw ParseError(line, "usage: tup <name> <e1> ... <ek>");
      PendingTuple t{line, tok[1], {}};
      for (std::size_t i = 2; i < tok.size(); ++i)
        t.elements.push_back(static_cast<Element>(parse_count(tok[i], line, "element")));
      tuples.push_back(std::move(t));
    } else if (dir == "ann") {
      if (tok.size() < 2) throw ParseError(line, "usage: ann <element> <token...>");
      PendingAnnotation a{line, static_cast<Element>(parse_count(tok[1], line, "element")), {}};
      a.tokens.assign(tok.begin() + 2, tok.end());
      annotations.push_back(std::move(a));
    } else {
      throw ParseError(line, "unknown directive '" + dir + "'");
    }
  }
  if (!n) throw ParseError(line, "missing 'universe' line");

  Signature sig;
  try {
    sig = Signature(symbols, semantics);
  } catch (const DomainError& e) {
    // Report the first offending rel line.
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      try {
        Signature(std::vector<Symbol>(symbols.begin(), symbols.begin() + i + 1), semantics);
      } catch (const DomainError& inner) {
        throw ParseError(symbol_lines[i], inner.what());
      }
    }
    throw ParseError(line, e.what());
  }

  FinStructure s(sig, *n);
  for (auto& t : tuples) {
    try {
      if (!s.add_tuple(t.name, t.elements)) throw ParseError(t.line, "duplicate tuple");
    } catch (const DomainError& e) {
      throw ParseError(t.line, e.what());
    }
  }
  std::vector<bool> annotated(*n, false);
  for (auto& a : annotations) {
    if (a.element >= *n) throw ParseError(a.line, "annotation for element outside the universe");
    if (annotated[a.element]) throw ParseError(a.line, "element annotated twice");
    annotated[a.element] = true;
    s.set_annotation(a.element, std::move(a.tokens));
  }
  return s;
}

FinStructure parse_structure_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_structure(in);
}

FinStructure load_structure(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_structure(in);
}

std::string serialize_structure(const FinStructure& s) {
  std::ostringstream out;
  const Signature& sig = s.signature();
  out << "universe " << s.size() << '\n';
  if (sig.semantics() == TupleSemantics::ordered) out << "semantics ordered\n";
  for (const auto& sym : sig.symbols())
    out << "rel " << sym.name << ' ' << sym.arity << ' ' << to_string(sym.weight) << '\n';
  for (const auto& [symbol, elements] : s.sorted_instances()) {
    out << "tup " << sig.symbol(symbol).name;
    for (Element e : elements) out << ' ' << e;
    out << '\n';
  }
  for (Element e = 0; e < s.size(); ++e) {
    const auto& ann = s.annotation(e);
    if (ann.empty()) continue;
    out << "ann " << e;
    for (const auto& t : ann) out << ' ' << t;
    out << '\n';
  }
  return out.str();
}

void save_structure(const std::filesystem::path& path, const FinStructure& s) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << serialize_structure(s);
}

ElementMap parse_map(std::istream& in) {
  std::map<Element, Element> pairs;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto tok = tokenize_line(raw);
    if (tok.empty()) continue;
    if (tok[0] != "map" || tok.size() != 3) throw ParseError(line, "usage: map <src> <dst>");
    auto src = static_cast<Element>(parse_count(tok[1], line, "source"));
    auto dst = static_cast<Element>(parse_count(tok[2], line, "target"));
    if (src >= kMaxUniverse || dst >= kMaxUniverse)
      throw ParseError(line, "element id beyond the universe cap");
    if (!pairs.emplace(src, dst).second) throw ParseError(line, "source mapped twice");
  }
  ElementMap out(pairs.size(), kUnmapped);
  for (auto [src, dst] : pairs) {
    if (src >= out.size()) throw ParseError(line, "map sources must be 0..n-1");
    out[src] = dst;
  }
  return out;
}

ElementMap parse_map_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_map(in);
}

ElementMap load_map(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_map(in);
}

std::string serialize_map(const ElementMap& map) {
  std::ostringstream out;
  for (std::size_t i = 0; i < map.size(); ++i) out << "map " << i << ' ' << map[i] << '\n';
  return out.str();
}

}  // namespace predim
