#include "predim/oracles.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <mutex>

#include "predim/errors.hpp"

namespace predim {

namespace fp {

namespace {

std::uint32_t inverse(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

std::size_t width(const std::vector<Vector>& rows) {
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.size());
  return w;
}

/// In-place reduced row echelon form; returns the rank.
std::size_t reduce(std::vector<Vector>& rows, std::size_t cols, std::uint32_t p) {
  for (auto& r : rows) r.resize(cols, 0);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    std::uint64_t inv = inverse(rows[rank][c], p);
    for (auto& x : rows[rank]) x = static_cast<std::uint32_t>(x * inv % p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      std::uint64_t f = rows[r][c];
      for (std::size_t k = c; k < cols; ++k)
        rows[r][k] = static_cast<std::uint32_t>((rows[r][k] + (p - f) * rows[rank][k]) % p);
    }
    ++rank;
  }
  rows.resize(rank);
  return rank;
}

}  // namespace

Vector parse_vector(const Annotation& tokens, std::uint32_t p) {
  Vector v;
  for (const auto& t : tokens) {
    std::uint32_t x = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (ec != std::errc() || ptr != t.data() + t.size() || x >= p)
      throw OracleError("annotation token '" + t + "' is not a coordinate mod " +
                        std::to_string(p));
    v.push_back(x);
  }
  return v;
}

Annotation format_vector(const Vector& v) {
  Annotation out;
  for (auto x : v) out.push_back(std::to_string(x));
  return out;
}

int rank(std::vector<Vector> rows, std::uint32_t p) {
  return static_cast<int>(reduce(rows, width(rows), p));
}

std::vector<Vector> dependency_form(const std::vector<Vector>& columns, std::uint32_t p) {
  std::size_t height = width(columns);
  std::vector<Vector> rows(height, Vector(columns.size(), 0));
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r = 0; r < columns[c].size(); ++r) rows[r][c] = columns[c][r];
  reduce(rows, columns.size(), p);
  return rows;
}

std::optional<Vector> coordinates(const std::vector<Vector>& basis, const Vector& v,
                                  std::uint32_t p) {
  // Solve sum x_i basis_i = v through the RREF of [basis | v] by columns.
  std::vector<Vector> columns = basis;
  columns.push_back(v);
  auto rows = dependency_form(columns, p);
  const std::size_t m = basis.size();
  Vector x(m, 0);
  for (const auto& row : rows) {
    std::size_t lead = 0;
    while (lead < row.size() && row[lead] == 0) ++lead;
    if (lead == m) return std::nullopt;  // pivot on the augmented column
    x[lead] = row[m];
  }
  return x;
}

}  // namespace fp

namespace {

class FreeRank final : public BoundRank {
 public:
  int rank(const ElementSet& x) const override { return static_cast<int>(x.size()); }
};

class FreeOracle final : public MatroidOracle {
 public:
  std::string name() const override { return "free"; }
  bool modular() const override { return true; }
  bool is_free() const override { return true; }
  std::unique_ptr<BoundRank> bind(const FinStructure&) const override {
    return std::make_unique<FreeRank>();
  }
};

class UniformRank final : public BoundRank {
 public:
  explicit UniformRank(int k) : k_(k) {}
  int rank(const ElementSet& x) const override {
    return std::min(static_cast<int>(x.size()), k_);
  }

 private:
  int k_;
};

class UniformOracle final : public MatroidOracle {
 public:
  explicit UniformOracle(int k) : k_(k) {}
  std::string name() const override { return "uniform-" + std::to_string(k_); }
  bool modular() const override { return false; }
  std::unique_ptr<BoundRank> bind(const FinStructure&) const override {
    return std::make_unique<UniformRank>(k_);
  }

 private:
  int k_;
};

/// Annotations up to a linear isomorphism of their span.
class LinearAnnotations final : public AnnotationModel {
 public:
  explicit LinearAnnotations(std::uint32_t p) : p_(p) {}

  std::string name() const override { return "linear-" + std::to_string(p_); }

  void encode(const FinStructure& s, std::span<const Element> order,
              std::string& out) const override {
    std::vector<fp::Vector> columns;
    for (Element e : order) columns.push_back(fp::parse_vector(s.annotation(e), p_));
    auto rows = fp::dependency_form(columns, p_);
    out += 'L';
    out += std::to_string(rows.size());
    out += ':';
    for (const auto& row : rows)
      for (auto x : row) {
        out += std::to_string(x);
        out += ',';
      }
  }

  std::string invariant(const FinStructure& s, Element e) const override {
    auto v = fp::parse_vector(s.annotation(e), p_);
    bool zero = std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
    return zero ? "0" : "1";
  }

  std::vector<Annotation> extension_candidates(const FinStructure& partial,
                                               Element next) const override {
    std::vector<fp::Vector> existing;
    std::size_t dim = 0;
    for (Element e = 0; e < next; ++e) {
      existing.push_back(fp::parse_vector(partial.annotation(e), p_));
      dim = std::max(dim, existing.back().size());
    }
    for (auto& v : existing) v.resize(dim, 0);
    // Every vector of the current span, then one fresh direction.
    std::vector<fp::Vector> basis;
    for (const auto& v : existing) {
      auto trial = basis;
      trial.push_back(v);
      if (fp::rank(trial, p_) > static_cast<int>(basis.size())) basis.push_back(v);
    }
    std::vector<Annotation> out;
    std::vector<std::uint32_t> coeff(basis.size(), 0);
    while (true) {
      fp::Vector v(std::max<std::size_t>(dim, 1), 0);
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j)
          v[j] = static_cast<std::uint32_t>((v[j] + std::uint64_t{coeff[i]} * basis[i][j]) % p_);
      out.push_back(fp::format_vector(v));
      std::size_t i = 0;
      while (i < coeff.size() && ++coeff[i] == p_) coeff[i++] = 0;
      if (i == coeff.size()) break;
    }
    fp::Vector fresh(dim + 1, 0);
    fresh[dim] = 1;
    out.push_back(fp::format_vector(fresh));
    return out;
  }

  std::vector<Annotation> amalgamate(const FinStructure& left, const FinStructure& right,
                                     std::span<const Element> base_left,
                                     std::span<const Element> base_right,
                                     std::span<const Element> right_to_amalgam,
                                     std::size_t amalgam_size) const override {
    auto vectors = [&](const FinStructure& s) {
      std::vector<fp::Vector> out;
      for (Element e = 0; e < s.size(); ++e) out.push_back(fp::parse_vector(s.annotation(e), p_));
      return out;
    };
    auto lv = vectors(left);
    auto rv = vectors(right);
    std::vector<fp::Vector> lbase;
    std::vector<fp::Vector> rbase;
    for (auto e : base_left) lbase.push_back(lv[e]);
    for (auto e : base_right) rbase.push_back(rv[e]);
    if (fp::dependency_form(lbase, p_) != fp::dependency_form(rbase, p_))
      throw AmalgamError("linear annotations of the two bases are not equivalent");

    // A basis of the base span, chosen at the same base positions on both sides.
    std::vector<fp::Vector> lb;
    std::vector<fp::Vector> rb;
    for (std::size_t i = 0; i < lbase.size(); ++i) {
      auto trial = lb;
      trial.push_back(lbase[i]);
      if (fp::rank(trial, p_) > static_cast<int>(lb.size())) {
        lb.push_back(lbase[i]);
        rb.push_back(rbase[i]);
      }
    }
    auto extend = [&](std::vector<fp::Vector> basis, const std::vector<fp::Vector>& all) {
      for (const auto& v : all) {
        auto trial = basis;
        trial.push_back(v);
        if (fp::rank(trial, p_) > static_cast<int>(basis.size())) basis.push_back(v);
      }
      return basis;
    };
    auto lfull = extend(lb, lv);
    auto rfull = extend(rb, rv);
    const std::size_t r = lb.size();
    const std::size_t s = lfull.size() - r;
    const std::size_t t = rfull.size() - r;
    auto pad_width = [&](std::vector<fp::Vector>& vs) {
      std::size_t w = 0;
      for (auto& v : vs) w = std::max(w, v.size());
      for (auto& v : vs) v.resize(w, 0);
    };
    auto lall = lfull;
    lall.insert(lall.end(), lv.begin(), lv.end());
    pad_width(lall);
    auto rall = rfull;
    rall.insert(rall.end(), rv.begin(), rv.end());
    pad_width(rall);
    std::vector<fp::Vector> lbasis(lall.begin(), lall.begin() + lfull.size());
    std::vector<fp::Vector> rbasis(rall.begin(), rall.begin() + rfull.size());

    std::vector<Annotation> out(amalgam_size);
    for (Element e = 0; e < left.size(); ++e) {
      auto x = fp::coordinates(lbasis, lall[lfull.size() + e], p_);
      if (!x) throw AmalgamError("internal: left vector outside its own span");
      fp::Vector v(std::max<std::size_t>(r + s + t, 1), 0);
      std::copy(x->begin(), x->end(), v.begin());
      out[e] = fp::format_vector(v);
    }
    std::vector<bool> is_base(right.size(), false);
    for (auto e : base_right) is_base[e] = true;
    for (Element e = 0; e < right.size(); ++e) {
      if (is_base[e]) continue;
      auto x = fp::coordinates(rbasis, rall[rfull.size() + e], p_);
      if (!x) throw AmalgamError("internal: right vector outside its own span");
      fp::Vector v(std::max<std::size_t>(r + s + t, 1), 0);
      std::copy(x->begin(), x->begin() + r, v.begin());
      std::copy(x->begin() + r, x->end(), v.begin() + r + s);
      out[right_to_amalgam[e]] = fp::format_vector(v);
    }
    return out;
  }

  /// Parallel pairs (kind 0) and three-element circuits (kind 1).
  std::vector<Tuple> invariant_tuples(const FinStructure& s) const override {
    std::vector<fp::Vector> v;
    for (Element e = 0; e < s.size(); ++e) v.push_back(fp::parse_vector(s.annotation(e), p_));
    auto rank_of = [&](std::initializer_list<Element> es) {
      std::vector<fp::Vector> rows;
      for (Element e : es) rows.push_back(v[e]);
      return fp::rank(std::move(rows), p_);
    };
    const Element n = static_cast<Element>(s.size());
    std::vector<int> single(n);
    for (Element e = 0; e < n; ++e) single[e] = rank_of({e});
    std::vector<std::vector<char>> independent(n, std::vector<char>(n, 0));
    std::vector<Tuple> out;
    for (Element a = 0; a < n; ++a)
      for (Element b = a + 1; b < n; ++b) {
        if (!single[a] || !single[b]) continue;
        if (rank_of({a, b}) == 1) out.push_back({0, {a, b}});
        else independent[a][b] = 1;
      }
    for (Element a = 0; a < n; ++a)
      for (Element b = a + 1; b < n; ++b) {
        if (!independent[a][b]) continue;
        for (Element c = b + 1; c < n; ++c)
          if (independent[a][c] && independent[b][c] && rank_of({a, b, c}) == 2)
            out.push_back({1, {a, b, c}});
      }
    return out;
  }

  Annotation random_annotation(std::mt19937_64& rng) const override {
    fp::Vector v(3);
    for (auto& x : v) x = static_cast<std::uint32_t>(rng() % p_);
    return fp::format_vector(v);
  }

 private:
  std::uint32_t p_;
};

class LinearRank final : public BoundRank {
 public:
  LinearRank(std::vector<fp::Vector> vectors, std::uint32_t p) : vectors_(std::move(vectors)), p_(p) {}
  int rank(const ElementSet& x) const override {
    std::vector<fp::Vector> rows;
    for (Element e : x) rows.push_back(vectors_[e]);
    return fp::rank(std::move(rows), p_);
  }

 private:
  std::vector<fp::Vector> vectors_;
  std::uint32_t p_;
};

/// Rank over F_2 with vectors packed into machine words.
class BinaryRank final : public BoundRank {
 public:
  explicit BinaryRank(std::vector<std::uint64_t> vectors) : vectors_(std::move(vectors)) {}
  int rank(const ElementSet& x) const override {
    std::uint64_t basis[64] = {};
    int r = 0;
    for (Element e : x) {
      std::uint64_t v = vectors_[e];
      while (v != 0) {
        int top = 63 - std::countl_zero(v);
        if (basis[top] == 0) {
          basis[top] = v;
          ++r;
          break;
        }
        v ^= basis[top];
      }
    }
    return r;
  }

 private:
  std::vector<std::uint64_t> vectors_;
};

class LinearOracle final : public MatroidOracle {
 public:
  explicit LinearOracle(std::uint32_t p) : p_(p), model_(p) {}
  std::string name() const override { return "linear-" + std::to_string(p_); }
  bool modular() const override { return true; }
  const AnnotationModel* annotation_model() const override { return &model_; }

  std::unique_ptr<BoundRank> bind(const FinStructure& s) const override {
    std::vector<fp::Vector> vectors;
    bool fits = p_ == 2;
    for (Element e = 0; e < s.size(); ++e) {
      if (s.annotation(e).empty())
        throw OracleError("element " + std::to_string(e) + " lacks a vector annotation for " +
                          name());
      vectors.push_back(fp::parse_vector(s.annotation(e), p_));
      if (vectors.back().size() > 64) fits = false;
    }
    if (fits) {
      std::vector<std::uint64_t> packed;
      for (const auto& v : vectors) {
        std::uint64_t word = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
          if (v[i]) word |= std::uint64_t{1} << i;
        packed.push_back(word);
      }
      return std::make_unique<BinaryRank>(std::move(packed));
    }
    return std::make_unique<LinearRank>(std::move(vectors), p_);
  }

 private:
  std::uint32_t p_;
  LinearAnnotations model_;
};

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::optional<std::uint32_t> suffix_number(std::string_view name, std::string_view prefix) {
  if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
  auto rest = name.substr(prefix.size());
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
  if (rest.empty() || ec != std::errc() || ptr != rest.data() + rest.size()) return std::nullopt;
  return v;
}

}  // namespace

OraclePtr free_oracle() {
  static const OraclePtr oracle = std::make_shared<FreeOracle>();
  return oracle;
}

OraclePtr uniform_oracle(int k) {
  if (k < 0) throw SpecError("uniform matroid needs k >= 0");
  return std::make_shared<UniformOracle>(k);
}

OraclePtr linear_oracle(std::uint32_t p) {
  if (!is_prime(p) || p > 65521) throw SpecError("linear oracle needs a prime field size");
  static std::mutex mutex;
  static std::map<std::uint32_t, OraclePtr> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[p];
  if (!slot) slot = std::make_shared<LinearOracle>(p);
  return slot;
}

OraclePtr make_oracle(std::string_view name) {
  if (name == "free") return free_oracle();
  if (auto k = suffix_number(name, "uniform-")) return uniform_oracle(static_cast<int>(*k));
  if (auto p = suffix_number(name, "linear-")) return linear_oracle(*p);
  throw SpecError("unknown matroid oracle '" + std::string(name) + "'");
}

}  // namespace predim
