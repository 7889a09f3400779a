#include "predim/element_set.hpp"

#include <algorithm>
#include <sstream>

#include "predim/errors.hpp"

namespace predim {

ElementSet::ElementSet(std::initializer_list<Element> elements) {
  for (Element e : elements) {
    if (e >= kMaxUniverse) throw DomainError("element id exceeds the universe cap");
    insert(e);
  }
}

ElementSet::ElementSet(std::span<const Element> elements) {
  for (Element e : elements) {
    if (e >= kMaxUniverse) throw DomainError("element id exceeds the universe cap");
    insert(e);
  }
}

ElementSet ElementSet::range(std::size_t n) {
  if (n > kMaxUniverse) throw DomainError("universe larger than the supported cap");
  ElementSet s;
  for (std::size_t w = 0; w < kWords && n > 0; ++w) {
    if (n >= 64) {
      s.words_[w] = ~std::uint64_t{0};
      n -= 64;
    } else {
      s.words_[w] = (std::uint64_t{1} << n) - 1;
      n = 0;
    }
  }
  return s;
}

std::size_t ElementSet::size() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool ElementSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

bool ElementSet::subset_of(const ElementSet& other) const {
  for (std::size_t i = 0; i < kWords; ++i)
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  return true;
}

bool ElementSet::intersects(const ElementSet& other) const {
  for (std::size_t i = 0; i < kWords; ++i)
    if ((words_[i] & other.words_[i]) != 0) return true;
  return false;
}

std::size_t ElementSet::next_from(std::size_t pos) const {
  while (pos < kMaxUniverse) {
    std::size_t w = pos >> 6;
    std::uint64_t masked = words_[w] & (~std::uint64_t{0} << (pos & 63));
    if (masked != 0) return (w << 6) + static_cast<std::size_t>(std::countr_zero(masked));
    pos = (w + 1) << 6;
  }
  return kMaxUniverse;
}

std::vector<Element> ElementSet::to_vector() const {
  std::vector<Element> out;
  out.reserve(size());
  for (Element e : *this) out.push_back(e);
  return out;
}

std::string ElementSet::to_string() const {
  std::string out = "{";
  bool first_item = true;
  for (Element e : *this) {
    if (!first_item) out += ',';
    out += std::to_string(e);
    first_item = false;
  }
  return out + "}";
}

ElementSet& ElementSet::operator|=(const ElementSet& o) {
  for (std::size_t i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
  return *this;
}

ElementSet& ElementSet::operator&=(const ElementSet& o) {
  for (std::size_t i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
  return *this;
}

ElementSet& ElementSet::operator-=(const ElementSet& o) {
  for (std::size_t i = 0; i < kWords; ++i) words_[i] &= ~o.words_[i];
  return *this;
}

std::strong_ordering operator<=>(const ElementSet& a, const ElementSet& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end(); ++ia, ++ib) {
    if (auto c = *ia <=> *ib; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t ElementSet::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

ElementSet parse_element_list(const std::string& text) {
  std::string cleaned;
  for (char c : text) {
    if (c == ',' || c == '{' || c == '}') cleaned += ' ';
    else cleaned += c;
  }
  std::istringstream in(cleaned);
  ElementSet s;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(token, &used);
    } catch (const std::exception&) {
      throw DomainError("not an element id: " + token);
    }
    if (used != token.size()) throw DomainError("not an element id: " + token);
    if (value >= kMaxUniverse) throw DomainError("element id exceeds the universe cap");
    s.insert(static_cast<Element>(value));
  }
  return s;
}

std::string format_element_list(const ElementSet& s) {
  std::string out;
  for (Element e : s) {
    if (!out.empty()) out += ' ';
    out += std::to_string(e);
  }
  return out;
}

}  // namespace predim
