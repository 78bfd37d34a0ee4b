#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ff/grid.hpp"
#include "ff/schouten.hpp"
#include "ff/tensor.hpp"

namespace ff {

/// Poisson structure on a chart: the bivector, the Casimirs it was built from
/// (may be empty for hand-made structures), the conformal factor, and a model
/// tag ("lefschetz", "fold", "fold-nonorientable", or "custom").
struct PoissonStructure {
  Chart chart;
  MultivectorField bivector;
  std::vector<ScalarField> casimirs;
  ScalarField conformal_factor{Polynomial(0)};
  std::string model_tag = "custom";
};

/// Result of the non-vanishing certification for a conformal factor.
/// `exact` means the positivity was proved from the coefficient shape
/// (constant, or positive constant plus positive even monomials, or the
/// negative of such); otherwise the factor was sampled on a dense grid and
/// min_abs_sample records the smallest magnitude seen.
struct NonvanishingCert {
  bool ok = false;
  bool exact = false;
  double min_abs_sample = 0.0;
};

NonvanishingCert certify_nonvanishing(const ScalarField& k, const Chart& chart,
                                      int nodes_per_axis = 21);

/// Builds the rank <= 2 bivector with prescribed Casimirs F_1..F_{n-2}:
///
///   pi^{ij} = (k / mu) * eps^{i j l_1 ... l_{n-2}} d_{l_1}F_1 ... d_{l_{n-2}}F_{n-2}
///
/// where eps is the Levi-Civita symbol and mu the (constant) orientation
/// coefficient of the chart. Verifies the Jacobi identity exactly when all
/// inputs are Exact.
PoissonStructure build_flaschka_ratiu(const Chart& chart, std::vector<ScalarField> casimirs,
                                      ScalarField k, std::string model_tag = "custom");

ScalarField poisson_bracket(const PoissonStructure& p, const ScalarField& f,
                            const ScalarField& g);

/// X_h with components X^i = sum_j pi^{ij} d_j h.
std::vector<ScalarField> hamiltonian_vector_field(const PoissonStructure& p,
                                                  const ScalarField& h);

struct CasimirCheck {
  bool exact = false;
  bool holds = false;
  double max_residual = 0.0;
};

/// Checks that the anchor annihilates dF. Exact fields give an exact verdict;
/// Smooth fields need sample points and report the largest residual.
CasimirCheck is_casimir(const PoissonStructure& p, const ScalarField& f,
                        std::span<const std::vector<double>> samples = {});

/// Multiplies the bivector by c (and folds c into the stored conformal
/// factor). Re-verifies Jacobi exactly in the Exact backend.
PoissonStructure conformal_rescale(const PoissonStructure& p, const ScalarField& c);

enum class Proportionality { ByConstant, ByField, None };

struct ConformalComparison {
  Proportionality kind = Proportionality::None;
  Rational constant{0};                  // a = constant * b
  std::optional<ScalarField> field;      // a = field * b
};

/// Decides whether a = r * b for a rational constant r, or a = c * b for a
/// polynomial c non-vanishing on the box. Exact coefficients only; bivectors
/// with Smooth coefficients compare as None.
ConformalComparison compare_conformal(const MultivectorField& a, const MultivectorField& b);

}  // namespace ff
