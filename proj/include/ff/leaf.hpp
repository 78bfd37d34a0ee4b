#pragma once

#include <string>
#include <vector>

#include "ff/poisson.hpp"

namespace ff {

/// Orthonormal oriented frame (u, v) of the leaf tangent plane at a rank-2
/// point. The orientation is fixed so that the induced leaf area form is
/// positive on (u, v).
struct LeafFrame {
  std::vector<double> point;
  std::vector<double> u;
  std::vector<double> v;
  double orthonormality_residual = 0.0;
  double casimir_residual = 0.0;
};

/// Frame of the symplectic leaf through q. Uses the kernel of the Casimir
/// differentials when n-2 independent Casimirs are declared, otherwise the
/// range of the anchor map. Throws when the rank at q is not 2.
LeafFrame leaf_frame(const PoissonStructure& p, std::span<const double> q);

/// Minimum-norm covector alpha with pi(. , alpha) = w; relative residual must
/// stay below 1e-10 (w has to be tangent to the leaf).
std::vector<double> covector_lift(const PoissonStructure& p, std::span<const double> q,
                                  std::span<const double> w);

/// Leaf symplectic form evaluated on tangent vectors u, v at q:
/// omega(u, v) = <alpha, v> for any lift alpha of u.
double leaf_form(const PoissonStructure& p, std::span<const double> q,
                 std::span<const double> u, std::span<const double> v);

/// omega(u, v) on the oriented orthonormal frame: the ratio of the leaf
/// symplectic form to the Euclidean area form of the leaf plane. Positive at
/// every rank-2 point.
double area_form_ratio(const PoissonStructure& p, std::span<const double> q);

/// Straight-line approach path r -> base + r * direction.
struct ApproachPath {
  std::vector<double> base;
  std::vector<double> direction;
  std::vector<double> point(double r) const;
};

struct ScalingFit {
  std::vector<double> radii;
  std::vector<double> values;
  double slope = 0.0;
  double max_log_residual = 0.0;
};

/// area_form_ratio along an approach path, with a log-log slope fit. Radii
/// must be positive and strictly decreasing; path points must stay clear of
/// the model's singular set.
ScalingFit scaling_fit(const PoissonStructure& p, const ApproachPath& path,
                       std::vector<double> radii);

struct StepPolicy {
  double dt = 1e-3;
  int output_every = 1;
  double norm_growth_factor = 10.0;  // halve the step beyond this growth
  int max_halvings = 30;
};

enum class FlowTermination { Completed, BoundaryExit, StepUnderflow };

std::string to_string(FlowTermination t);

struct LeafTrajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> points;
  std::vector<std::vector<double>> casimir_values;
  std::vector<double> casimir_drift;  // relative, per Casimir
  FlowTermination termination = FlowTermination::Completed;
};

/// Fixed-step RK4 integration of the Hamiltonian flow of h up to time T.
/// Deterministic: the step sequence depends only on the policy and the
/// trajectory. The step is halved (up to max_halvings) while the local
/// bivector norm exceeds norm_growth_factor times its starting value; leaving
/// the domain box or running out of halvings terminates the flow with the
/// corresponding event. Starting points within 1e-12 of the model's singular
/// set are refused.
LeafTrajectory integrate_hamiltonian(const PoissonStructure& p, const ScalarField& h,
                                     std::span<const double> x0, double T,
                                     const StepPolicy& policy = {});

}  // namespace ff
