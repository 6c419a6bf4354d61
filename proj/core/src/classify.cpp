#include "pinchlab/classify.hpp"

#include <algorithm>

#include "pinchlab/errors.hpp"

namespace pinchlab {

int radon_hurwitz(int n) {
  if (n < 1) throw DomainError("radon_hurwitz requires n >= 1");
  int b = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++b;
  }
  const int c = b % 4;
  const int d = b / 4;
  return (1 << c) + 8 * d;
}

std::string StructureCase::name() const {
  switch (kind) {
    case StructureKind::OddVectorField:
      return "odd_vector_field";
    case StructureKind::EvenProjector:
      return "even_projector(rank<=" + std::to_string(max_rank) + ")";
    case StructureKind::ComplexStructure7:
      return "complex_structure_7";
    case StructureKind::G2Structure8:
      return "g2_structure_8";
    case StructureKind::LieBracket134:
      return "lie_bracket_134(degree>=" + std::to_string(min_degree) + ")";
    case StructureKind::NoneOddDim:
      return "none_odd_dimension";
  }
  return "";
}

namespace {

StructureCase forms_case(StructureKind kind, int n, int k, int p) {
  StructureCase c;
  c.kind = kind;
  const double d1 = delta1(n, k, p);
  const double d2 = delta2(n, k, p);
  c.threshold = std::max(d1, d2);
  c.binding = d1 >= d2 ? Binding::Delta1 : Binding::Delta2;
  return c;
}

StructureCase projector_case(int n) {
  StructureCase c;
  c.kind = StructureKind::EvenProjector;
  c.max_rank = std::min(radon_hurwitz(n) - 1, (n - 2) / 2);
  const double candidates[] = {delta1(n, 4, 2), delta2_sym(n, 4), delta2_sym_deg2(n, c.max_rank)};
  const Binding labels[] = {Binding::Delta1, Binding::Delta2Sym, Binding::Delta2SymDeg2};
  const auto it = std::max_element(std::begin(candidates), std::end(candidates));
  c.threshold = *it;
  c.binding = labels[it - std::begin(candidates)];
  return c;
}

}  // namespace

std::vector<StructureCase> structure_menu(int n) {
  if (n < 3) throw DomainError("structure_menu requires n >= 3");
  if (n == 7) return {forms_case(StructureKind::ComplexStructure7, 7, 3, 2)};
  if (n % 2 == 1) return {StructureCase{}};
  if (n == 8) return {forms_case(StructureKind::G2Structure8, 8, 3, 3), projector_case(8)};
  if (n == 134) {
    StructureCase bracket = forms_case(StructureKind::LieBracket134, 134, 3, 3);
    bracket.min_degree = 3;
    return {bracket, forms_case(StructureKind::OddVectorField, 134, 3, 1)};
  }
  if (n == 4 || n % 4 == 2) return {forms_case(StructureKind::OddVectorField, n, 3, 1)};
  return {projector_case(n)};
}

Verdict verdict(int n, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("delta must lie in (0, 1]");
  Verdict v;
  v.cases = structure_menu(n);
  v.ergodic = std::all_of(v.cases.begin(), v.cases.end(), [&](const StructureCase& c) {
    return c.kind == StructureKind::NoneOddDim || delta > c.threshold;
  });
  if (n % 2 == 0 && delta > 0.25) {
    v.note =
        "Brin's conjecture: a strictly 1/4-pinched manifold should have an ergodic frame flow; "
        "the Kahler examples show 1/4 cannot be lowered.";
  }
  return v;
}

}  // namespace pinchlab
