#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gma/algebra.hpp"
#include "gma/literal.hpp"
#include "gma/modular.hpp"
#include "gma/report.hpp"

namespace gma {

/// Finite index set standing in for the wedges: a partial order, the causal
/// complement, and the action of each edge reflection on the labels.
struct FiniteWedgeSystem {
  std::vector<std::string> labels;
  /// (a, b): wedge a is contained in wedge b. The order is the reflexive,
  /// transitive closure of these pairs.
  std::vector<std::pair<int, int>> order;
  std::vector<int> complement;
  /// reflections[w0][w] is the label of lambda_{w0} w.
  std::vector<std::vector<int>> reflections;

  int size() const { return static_cast<int>(labels.size()); }
  int index_of(const std::string& label) const;
  /// a <= b in the generated order.
  bool leq(int a, int b) const;

  /// Throws ValidationError naming the violated axiom.
  void validate() const;
};

struct ToyNet {
  std::string name;
  FiniteWedgeSystem system;
  Eigen::Index hilbert_dim = 0;
  std::vector<OperatorAlgebra> algebras; ///< indexed like system.labels
  ComplexVector omega0;
  std::vector<ComplexMatrix> symmetries;
  /// Empty, or the four commuting generators P_0..P_3.
  std::vector<ComplexMatrix> translation_generators;
  /// Optional Poincare literal per label; the label's wedge is that element
  /// applied to the standard wedge.
  std::vector<std::string> geometry;

  /// Shapes, unit omega, unitarity of symmetries, system axioms. Isotony and
  /// the symmetry hypotheses are findings of the checks, not validation.
  void validate() const;
};

/// Modular data of every wedge algebra with omega0, or the reason it does
/// not exist.
struct NetModular {
  std::vector<std::optional<ModularData>> data;
  std::vector<std::string> errors;
  std::vector<std::string> error_kinds;

  bool complete() const;
};

NetModular compute_net_modular(const ToyNet& net);

/// Injectivity and order preservation in both directions.
CheckResult check_condition_a(const ToyNet& net, double tol = 1e-8);
/// omega0 cyclic and separating for every wedge algebra.
CheckResult check_condition_b(const ToyNet& net);
/// J_{W0} R(W) J_{W0} = R(lambda_{W0} W) for every pair.
CheckResult check_condition_c(const ToyNet& net, const NetModular& mod, double tol = 1e-8);
/// R(W)' = R(W') for every label.
CheckResult wedge_duality_check(const ToyNet& net, double tol = 1e-8);

/// An element v -> K v (antilinear when `anti`) of the group generated by
/// the modular conjugations.
struct ConjugationGroupElement {
  ComplexMatrix kernel;
  bool anti = false;
};

/// Exhaustive closure of the group generated by the conjugations. Throws
/// EnumerationCapError past `cap` elements.
std::vector<ConjugationGroupElement> conjugation_group(const NetModular& mod, std::size_t cap = 10000);

/// Whether Delta_W^{it}, t in {0.5, 1}, lies in the conjugation group; the
/// largest distance to the nearest element is the residual. Reported with
/// status info; the outcome is in `verdict`.
CheckResult check_condition_d(const ToyNet& net, const NetModular& mod, double tol = 1e-8);

/// |[V, J_W]| for every symmetry passing its hypotheses; the others are
/// listed as excluded with a diagnosis.
CheckResult symmetry_commutation_check(const ToyNet& net, const NetModular& mod, double tol = 1e-8);

/// The algebra generated by all wedge algebras.
OperatorAlgebra global_algebra(const ToyNet& net);

/// commutant(global) is contained in the global algebra and equals its
/// center.
CheckResult global_algebra_check(const ToyNet& net, double tol = 1e-8);

/// Joint kernel of the translation generators against span{Z omega0 : Z
/// central}, plus center(R) inside center(R(W)) for every W.
CheckResult invariant_subspace_check(const ToyNet& net, double tol = 1e-8);

enum class AbelianClassification { idle, degenerate_abelian, inconsistent };
std::string to_string(AbelianClassification c);

AbelianClassification classify_degenerate_abelian(const ToyNet& net);
CheckResult degenerate_abelian_detector(const ToyNet& net);

/// Consistency of the optional wedge geometry with the abstract system:
/// complements, reflections and order agree with the wedge calculus.
CheckResult geometry_consistency_check(const ToyNet& net);

using DemoParams = std::map<std::string, std::string>;

/// Demo models: doubled, multi_block, broken_symmetry, degenerate_abelian,
/// translation_equipped, two_pairs. Throws ValidationError on unknown names
/// or bad parameters.
ToyNet build_demo(const std::string& name, const DemoParams& params = {});

std::vector<std::string> demo_names();

} // namespace gma
