#include "predim/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "predim/errors.hpp"

namespace predim {

namespace {

using Colouring = std::vector<std::uint32_t>;

void put_u8(std::string& out, std::uint32_t v) { out += static_cast<char>(v & 0xff); }
void put_u16(std::string& out, std::uint32_t v) {
  put_u8(out, v >> 8);
  put_u8(out, v);
}
void put_u32(std::string& out, std::uint32_t v) {
  put_u16(out, v >> 16);
  put_u16(out, v);
}

/// Ranks the keys and returns the dense rank of each position.
template <class Key>
Colouring dense_ranks(const std::vector<Key>& keys) {
  std::vector<std::size_t> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  Colouring out(keys.size());
  std::uint32_t rank = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i > 0 && keys[idx[i - 1]] < keys[idx[i]]) ++rank;
    out[idx[i]] = rank;
  }
  return out;
}

std::size_t colour_count(const Colouring& c) {
  if (c.empty()) return 0;
  return *std::max_element(c.begin(), c.end()) + 1;
}

class Canonizer {
 public:
  static constexpr std::size_t kNoJump = SIZE_MAX;

  Canonizer(const FinStructure& s, const AnnotationModel& model)
      : s_(s), model_(model), extra_(model.invariant_tuples(s)), extra_incident_(s.size()) {
    for (std::uint32_t i = 0; i < extra_.size(); ++i)
      for (Element e : extra_[i].elements) extra_incident_[e].push_back(i);
  }

  CanonicalLabeling run(std::span<const Element> base, BaseMode mode) {
    const std::size_t n = s_.size();
    ElementSet base_set;
    for (Element b : base) {
      if (b >= n) throw DomainError("base element outside the universe");
      if (base_set.contains(b)) throw DomainError("base lists an element twice");
      base_set.insert(b);
    }

    // Seed: base position or membership, then the annotation invariant and
    // per-symbol degrees.
    std::vector<std::pair<std::vector<std::uint64_t>, std::string>> keys(n);
    for (Element e = 0; e < n; ++e) {
      auto& [num, text] = keys[e];
      if (mode == BaseMode::pointwise && base_set.contains(e)) {
        auto pos = std::find(base.begin(), base.end(), e) - base.begin();
        num.push_back(static_cast<std::uint64_t>(pos));
      } else if (mode == BaseMode::setwise && base_set.contains(e)) {
        num.push_back(base.size());
      } else {
        num.push_back(base.size() + 1);
      }
      std::vector<std::uint64_t> degree(s_.signature().size(), 0);
      for (auto idx : s_.incident(e)) ++degree[s_.instances()[idx].symbol];
      num.insert(num.end(), degree.begin(), degree.end());
      text = model_.invariant(s_, e);
    }
    Colouring colours = refine(dense_ranks(keys));
    std::vector<Element> prefix;
    search(colours, prefix);

    CanonicalLabeling out;
    out.order = best_order_;
    out.code = header(base.size(), mode) + best_code_;
    return out;
  }

 private:
  std::string header(std::size_t base_size, BaseMode mode) const {
    std::string out;
    put_u8(out, 1);
    put_u8(out, static_cast<std::uint32_t>(mode));
    put_u16(out, static_cast<std::uint32_t>(s_.size()));
    put_u16(out, static_cast<std::uint32_t>(base_size));
    const Signature& sig = s_.signature();
    put_u8(out, sig.semantics() == TupleSemantics::ordered ? 1 : 0);
    put_u16(out, static_cast<std::uint32_t>(sig.size()));
    for (const auto& sym : sig.symbols()) {
      put_u16(out, static_cast<std::uint32_t>(sym.name.size()));
      out += sym.name;
      put_u8(out, static_cast<std::uint32_t>(sym.arity));
      std::string w = to_string(sym.weight);
      put_u8(out, static_cast<std::uint32_t>(w.size()));
      out += w;
    }
    return out;
  }

  Colouring refine(Colouring colours) const {
    const bool ordered = s_.signature().semantics() == TupleSemantics::ordered;
    std::size_t count = colour_count(colours);
    while (true) {
      std::vector<std::vector<std::uint32_t>> keys(s_.size());
      for (Element x = 0; x < s_.size(); ++x) {
        std::vector<std::vector<std::uint32_t>> descriptors;
        for (auto idx : s_.incident(x)) {
          const Instance& inst = s_.instances()[idx];
          std::vector<std::uint32_t> d{inst.symbol};
          if (ordered) {
            std::uint32_t positions = 0;
            for (std::size_t p = 0; p < inst.elements.size(); ++p)
              if (inst.elements[p] == x) positions |= 1u << p;
            d.push_back(positions);
            for (Element y : inst.elements) d.push_back(colours[y]);
          } else {
            std::vector<std::uint32_t> others;
            for (Element y : inst.elements)
              if (y != x) others.push_back(colours[y]);
            std::sort(others.begin(), others.end());
            d.insert(d.end(), others.begin(), others.end());
          }
          descriptors.push_back(std::move(d));
        }
        for (auto idx : extra_incident_[x]) {
          const auto& t = extra_[idx];
          std::vector<std::uint32_t> d{static_cast<std::uint32_t>(s_.signature().size()) + t.kind};
          std::vector<std::uint32_t> others;
          for (Element y : t.elements)
            if (y != x) others.push_back(colours[y]);
          std::sort(others.begin(), others.end());
          d.insert(d.end(), others.begin(), others.end());
          descriptors.push_back(std::move(d));
        }
        std::sort(descriptors.begin(), descriptors.end());
        auto& key = keys[x];
        key.push_back(colours[x]);
        for (const auto& d : descriptors) {
          key.push_back(static_cast<std::uint32_t>(d.size()));
          key.insert(key.end(), d.begin(), d.end());
        }
      }
      Colouring next = dense_ranks(keys);
      std::size_t next_count = colour_count(next);
      colours = std::move(next);
      if (next_count == count) return colours;
      count = next_count;
    }
  }

  static Colouring individualize(const Colouring& colours, Element x) {
    std::vector<std::uint64_t> keys(colours.size());
    for (std::size_t y = 0; y < colours.size(); ++y)
      keys[y] = 2 * static_cast<std::uint64_t>(colours[y]) + (y == x ? 0 : 1);
    return dense_ranks(keys);
  }

  std::string leaf_code(const std::vector<Element>& order) const {
    std::vector<Element> label(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) label[order[i]] = static_cast<Element>(i);
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(s_.instances().size());
    const bool ordered = s_.signature().semantics() == TupleSemantics::ordered;
    for (const auto& inst : s_.instances()) {
      std::vector<std::uint32_t> row{inst.symbol};
      for (Element e : inst.elements) row.push_back(label[e]);
      if (!ordered) std::sort(row.begin() + 1, row.end());
      rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    std::string out;
    put_u32(out, static_cast<std::uint32_t>(rows.size()));
    for (const auto& row : rows) {
      put_u16(out, row[0]);
      for (std::size_t i = 1; i < row.size(); ++i) put_u8(out, row[i]);
    }
    std::string ann;
    model_.encode(s_, order, ann);
    put_u32(out, static_cast<std::uint32_t>(ann.size()));
    out += ann;
    return out;
  }

  void record_automorphism(const std::vector<Element>& from, const std::vector<Element>& to) {
    ElementMap gamma(from.size());
    bool identity = true;
    for (std::size_t i = 0; i < from.size(); ++i) {
      gamma[from[i]] = to[i];
      if (from[i] != to[i]) identity = false;
    }
    if (!identity) automorphisms_.push_back(std::move(gamma));
  }

  static std::size_t common_depth(const std::vector<Element>& x, const std::vector<Element>& y) {
    std::size_t d = 0;
    while (d < x.size() && d < y.size() && x[d] == y[d]) ++d;
    return d;
  }

  /// Returns the depth to backtrack to: a leaf equivalent to the first or
  /// best leaf makes the rest of its branch below the common ancestor an
  /// image of what was already searched.
  std::size_t leaf(const Colouring& colours, const std::vector<Element>& prefix) {
    std::vector<Element> order(colours.size());
    for (Element e = 0; e < colours.size(); ++e) order[colours[e]] = e;
    std::string code = leaf_code(order);
    if (!have_first_) {
      have_first_ = true;
      first_code_ = code;
      first_order_ = order;
      first_path_ = prefix;
      best_code_ = code;
      best_order_ = order;
      best_path_ = prefix;
      return kNoJump;
    }
    if (code == first_code_) {
      record_automorphism(first_order_, order);
      return common_depth(first_path_, prefix);
    }
    if (code == best_code_) {
      record_automorphism(best_order_, order);
      return common_depth(best_path_, prefix);
    }
    if (code < best_code_) {
      best_code_ = std::move(code);
      best_order_ = std::move(order);
      best_path_ = prefix;
    }
    return kNoJump;
  }

  Element find(std::vector<Element>& parent, Element x) const {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  /// True when x lies in the orbit of an explored sibling under the known
  /// automorphisms that fix the prefix pointwise.
  bool pruned(Element x, const std::vector<Element>& explored,
              const std::vector<Element>& prefix) {
    if (explored.empty() || automorphisms_.empty()) return false;
    std::vector<Element> parent(s_.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& gamma : automorphisms_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(),
                               [&](Element p) { return gamma[p] == p; });
      if (!fixes) continue;
      for (Element y = 0; y < gamma.size(); ++y) {
        Element a = find(parent, y);
        Element b = find(parent, gamma[y]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    Element rx = find(parent, x);
    return std::any_of(explored.begin(), explored.end(),
                       [&](Element u) { return find(parent, u) == rx; });
  }

  std::size_t search(const Colouring& colours, std::vector<Element>& prefix) {
    const std::size_t n = colours.size();
    std::vector<std::size_t> cell_size(n, 0);
    for (auto c : colours) ++cell_size[c];
    std::size_t target = n;
    for (std::size_t c = 0; c < n; ++c) {
      if (cell_size[c] > 1) {
        target = c;
        break;
      }
    }
    if (target == n) return leaf(colours, prefix);
    std::vector<Element> explored;
    const std::size_t depth = prefix.size();
    for (Element x = 0; x < n; ++x) {
      if (colours[x] != target) continue;
      if (pruned(x, explored, prefix)) continue;
      prefix.push_back(x);
      std::size_t jump = search(refine(individualize(colours, x)), prefix);
      prefix.pop_back();
      explored.push_back(x);
      if (jump < depth) return jump;
    }
    return kNoJump;
  }

  const FinStructure& s_;
  const AnnotationModel& model_;
  std::vector<AnnotationModel::Tuple> extra_;
  std::vector<std::vector<std::uint32_t>> extra_incident_;
  std::vector<ElementMap> automorphisms_;
  bool have_first_ = false;
  std::string first_code_;
  std::vector<Element> first_order_;
  std::vector<Element> first_path_;
  std::vector<Element> best_path_;
  std::string best_code_;
  std::vector<Element> best_order_;
};

}  // namespace

const CanonicalCode& empty_code() {
  static const CanonicalCode code(1, '\0');
  return code;
}

CanonicalLabeling canonical_labeling(const FinStructure& s, const AnnotationModel& model,
                                     std::span<const Element> base, BaseMode mode) {
  if (s.size() == 0) return {{}, empty_code()};
  if (mode == BaseMode::none && !base.empty())
    throw DomainError("base given without a base mode");
  return Canonizer(s, model).run(base, mode);
}

CanonicalCode canonical_form(const FinStructure& s, const AnnotationModel& model) {
  return canonical_labeling(s, model).code;
}

CanonicalCode canonical_form_over(const FinStructure& s, std::span<const Element> base,
                                  const AnnotationModel& model) {
  return canonical_labeling(s, model, base, BaseMode::pointwise).code;
}

CanonicalCode canonical_form_pair(const FinStructure& s, const ElementSet& base,
                                  const AnnotationModel& model) {
  auto members = base.to_vector();
  return canonical_labeling(s, model, members, BaseMode::setwise).code;
}

std::string to_hex(const CanonicalCode& code) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(code.size() * 2);
  for (unsigned char c : code) {
    out += digits[c >> 4];
    out += digits[c & 15];
  }
  return out;
}

CanonicalCode from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw DomainError("hex code has odd length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw DomainError("bad hex digit");
  };
  CanonicalCode out;
  for (std::size_t i = 0; i < hex.size(); i += 2)
    out += static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1]));
  return out;
}

}  // namespace predim
