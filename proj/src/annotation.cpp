#include "predim/annotation.hpp"

#include <array>

#include "predim/errors.hpp"

namespace predim {

namespace {

class ExactAnnotations final : public AnnotationModel {
 public:
  std::string name() const override { return "exact"; }

  void encode(const FinStructure& s, std::span<const Element> order,
              std::string& out) const override {
    for (Element e : order) {
      const Annotation& a = s.annotation(e);
      out += std::to_string(a.size());
      out += '[';
      for (const auto& token : a) {
        out += std::to_string(token.size());
        out += ':';
        out += token;
      }
      out += ']';
    }
  }

  std::string invariant(const FinStructure& s, Element e) const override {
    std::string out;
    std::array<Element, 1> one{e};
    encode(s, one, out);
    return out;
  }

  std::vector<Annotation> extension_candidates(const FinStructure&, Element) const override {
    return {Annotation{}};
  }

  std::vector<Annotation> amalgamate(const FinStructure& left, const FinStructure& right,
                                     std::span<const Element> base_left,
                                     std::span<const Element> base_right,
                                     std::span<const Element> right_to_amalgam,
                                     std::size_t amalgam_size) const override {
    for (std::size_t i = 0; i < base_left.size(); ++i) {
      if (left.annotation(base_left[i]) != right.annotation(base_right[i]))
        throw AmalgamError("annotation conflict on base element " + std::to_string(i));
    }
    std::vector<Annotation> out(amalgam_size);
    for (Element e = 0; e < left.size(); ++e) out[e] = left.annotation(e);
    for (Element e = 0; e < right.size(); ++e) out[right_to_amalgam[e]] = right.annotation(e);
    return out;
  }

  Annotation random_annotation(std::mt19937_64&) const override { return {}; }
};

}  // namespace

const AnnotationModel& exact_annotations() {
  static const ExactAnnotations model;
  return model;
}

bool annotations_equivalent(const AnnotationModel& model, const FinStructure& s,
                            std::span<const Element> s_order, const FinStructure& t,
                            std::span<const Element> t_order) {
  if (s_order.size() != t_order.size()) return false;
  std::string a;
  std::string b;
  model.encode(s, s_order, a);
  model.encode(t, t_order, b);
  return a == b;
}

}  // namespace predim
