#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace predim {

using Element = std::uint32_t;

/// Structures are capped at this many elements; every element set is a
/// fixed-width bitset over [0, kMaxUniverse).
inline constexpr std::size_t kMaxUniverse = 256;

class ElementSet {
 public:
  static constexpr std::size_t kWords = kMaxUniverse / 64;

  class iterator {
   public:
    using value_type = Element;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const ElementSet* set, std::size_t pos) : set_(set), pos_(pos) {}
    Element operator*() const { return static_cast<Element>(pos_); }
    iterator& operator++() {
      pos_ = set_->next_from(pos_ + 1);
      return *this;
    }
    iterator operator++(int) {
      iterator copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const iterator& o) const { return pos_ == o.pos_; }

   private:
    const ElementSet* set_ = nullptr;
    std::size_t pos_ = kMaxUniverse;
  };

  ElementSet() = default;
  ElementSet(std::initializer_list<Element> elements);
  explicit ElementSet(std::span<const Element> elements);

  /// {0, ..., n-1}
  static ElementSet range(std::size_t n);

  void insert(Element e) { words_[e >> 6] |= bit(e); }
  void erase(Element e) { words_[e >> 6] &= ~bit(e); }
  bool contains(Element e) const {
    return e < kMaxUniverse && (words_[e >> 6] & bit(e)) != 0;
  }

  std::size_t size() const;
  bool empty() const;
  bool subset_of(const ElementSet& other) const;
  bool intersects(const ElementSet& other) const;

  /// Smallest element; kMaxUniverse when empty.
  std::size_t first() const { return next_from(0); }
  std::size_t next_from(std::size_t pos) const;

  iterator begin() const { return iterator(this, first()); }
  iterator end() const { return iterator(this, kMaxUniverse); }

  std::vector<Element> to_vector() const;
  std::string to_string() const;  // "{0,3,5}"

  ElementSet& operator|=(const ElementSet& o);
  ElementSet& operator&=(const ElementSet& o);
  ElementSet& operator-=(const ElementSet& o);
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

  ElementSet with(Element e) const {
    ElementSet r = *this;
    r.insert(e);
    return r;
  }
  ElementSet without(Element e) const {
    ElementSet r = *this;
    r.erase(e);
    return r;
  }

  bool operator==(const ElementSet&) const = default;

  /// Orders by size, then lexicographically by sorted element list.
  friend std::strong_ordering operator<=>(const ElementSet& a, const ElementSet& b);

  std::size_t hash() const;

 private:
  static constexpr std::uint64_t bit(Element e) { return std::uint64_t{1} << (e & 63); }

  std::array<std::uint64_t, kWords> words_{};
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

/// Parses "0,1,2" (also accepts spaces, braces, and the empty string).
ElementSet parse_element_list(const std::string& text);

/// Sorted ids separated by single spaces.
std::string format_element_list(const ElementSet& s);

}  // namespace predim
