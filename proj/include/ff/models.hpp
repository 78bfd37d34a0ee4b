#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ff/poisson.hpp"

namespace ff {

/// B^4 chart (x1, y1, x2, y2) on [-1,1]^4.
Chart lefschetz_chart();

/// S^1 x B^3 chart (theta, x1, x2, x3); theta is 2*pi-periodic and the x box
/// is [-8/5, 8/5]^3, wide enough for the model flows.
Chart fold_chart();

/// Casimirs of the Lefschetz model: the real and imaginary parts of
/// z1^2 + z2^2.
std::vector<ScalarField> lefschetz_casimirs();

/// Casimirs of the fold model: the angle coordinate theta and the indefinite
/// quadratic -x1^2 + x2^2 + x3^2.
std::vector<ScalarField> fold_casimirs();

/// Rank <= 2 model structure around a Lefschetz critical point, conformally
/// rescaled by k (k must be non-vanishing on the box).
PoissonStructure lefschetz_model(ScalarField k);

/// Model structure around a fold circle. For the non-orientable variant k has
/// to be invariant under the deck involution; violations throw.
PoissonStructure fold_model(ScalarField k, bool orientable = true);

/// The deck involution iota(theta, x1, x2, x3) = (theta + pi, -x1, -x2, x3).
std::vector<double> iota_apply(const Chart& chart, std::span<const double> x);

/// Pullback f o iota. Exact for polynomials not involving theta; otherwise a
/// Smooth wrapper evaluating at the (wrapped) image point.
ScalarField iota_pullback(const Chart& chart, const ScalarField& f);

struct IotaSymmetry {
  bool exact = false;
  bool holds = false;
  double max_residual = 0.0;
};

/// Is k o iota = k? Exact for theta-free polynomials, sampled otherwise.
IotaSymmetry check_iota_symmetry(const Chart& chart, const ScalarField& k,
                                 std::span<const std::vector<double>> samples = {});

struct InvolutionCheck {
  bool exact = false;
  bool holds = false;
  double max_residual = 0.0;
  std::optional<std::vector<double>> witness;  // a point where the identity fails
};

/// Verifies {g o iota, h o iota} = {g, h} o iota for a fold-chart structure.
/// Exact whenever bivector, g and h are Exact and theta-free; the sampled
/// fallback evaluates both sides at the given points.
InvolutionCheck involution_poisson_check(const PoissonStructure& p, const ScalarField& g,
                                         const ScalarField& h,
                                         std::span<const std::vector<double>> samples = {});

/// Exact check of the sl(2,R)-type relations {e1,e2} = -e3, {e2,e3} = e1,
/// {e1,e3} = e2 on the last three chart coordinates. True for the fold model
/// with k = 1.
bool sl2_check(const PoissonStructure& p);

/// Representative with theta in [0, pi) under the deck involution, for the
/// non-orientable quotient.
std::vector<double> fold_fundamental_domain(const Chart& chart, std::span<const double> x);

enum class NodeLabel { Regular, LefschetzPoint, FoldCircle, Singular };

std::string to_string(NodeLabel label);

struct SingularSetReport {
  struct Row {
    std::vector<double> x;
    int rank = 0;
    NodeLabel label = NodeLabel::Regular;
    bool exact = false;
  };
  std::vector<Row> rows;
};

/// Pointwise rank over a grid with model-aware labels. Exact evaluation is
/// used whenever every coefficient can be evaluated exactly at the node
/// (always the case for the shipped models); rank 2 is Regular, rank 0 maps
/// to the model's singularity type, anything else is Singular.
SingularSetReport classify_singular_set(const PoissonStructure& p, const GridSpec& grid);

/// Euclidean distance to the model's analytic singular set ({0} for
/// lefschetz, {x = 0} for fold); +infinity for custom structures.
double singular_set_distance(const PoissonStructure& p, std::span<const double> x);

}  // namespace ff
