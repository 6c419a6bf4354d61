#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pinchlab/thresholds.hpp"

namespace pinchlab {

/// rho(n) for n = (2a+1) 2^{c+4d}: 2^c + 8d.
int radon_hurwitz(int n);

enum class StructureKind { OddVectorField, EvenProjector, ComplexStructure7, G2Structure8, LieBracket134, NoneOddDim };

struct StructureCase {
  StructureKind kind = StructureKind::NoneOddDim;
  /// EvenProjector only: min(rho(n)-1, (n-2)/2).
  int max_rank = 0;
  /// LieBracket134 only.
  int min_degree = 0;
  double threshold = 0.0;
  Binding binding = Binding::None;

  std::string name() const;
};

/// Possible flow-invariant structures in dimension n, each with the pinching
/// threshold above which it cannot occur.
std::vector<StructureCase> structure_menu(int n);

struct Verdict {
  bool ergodic = false;
  std::vector<StructureCase> cases;
  /// Informational remark; never part of the decision.
  std::optional<std::string> note;
};

/// Ergodic iff delta exceeds every case threshold; otherwise inconclusive.
Verdict verdict(int n, double delta);

}  // namespace pinchlab
