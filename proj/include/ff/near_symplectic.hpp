#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ff/poisson.hpp"

namespace ff {

/// S^1 x B^3 chart (t, x1, x2, x3) with t periodic and x in [-1,1]^3.
Chart near_symplectic_chart();

/// The 2-form omega = dt ^ df + *(dt ^ df) built from a Morse-type function
/// f(x1, x2, x3), with the flat product metric and orientation
/// dt ^ dx1 ^ dx2 ^ dx3, so *(dt^dx1) = dx2^dx3, *(dt^dx2) = dx3^dx1,
/// *(dt^dx3) = dx1^dx2.
struct NearSymplecticForm {
  Chart chart;
  DifferentialForm omega;
  Polynomial f;         // on (x1, x2, x3)
  Polynomial f_lifted;  // the same function on the 4-dimensional chart
  std::string circle_class = "even";  // metadata only
};

/// f must be an exact polynomial in three variables.
NearSymplecticForm build_near_symplectic(const Polynomial& f,
                                         std::string circle_class = "even");

struct NearSymplecticReport {
  struct Row {
    std::vector<double> x;
    double wedge_square = 0.0;  // omega ^ omega / vol at the node (exact value)
    bool zero = false;          // all six coefficients vanish at the node
    int rank = 0;               // pointwise rank of the coefficient matrix
    std::optional<int> gradient_rank;  // rank of the 6x4 linearization, zero nodes only
  };

  bool wedge_identity = false;  // omega^omega = 2|grad f|^2 vol as polynomials
  bool closed = false;          // d omega = 0 exactly
  DifferentialForm d_omega;     // the exact defect, for reporting
  bool wedge_nonneg = false;
  bool zero_locus_matches = false;  // zero nodes = critical nodes of f (x S^1)
  bool gradient_rank3 = false;      // every zero node has linearization rank 3
  bool rank_never_2 = false;        // pointwise rank in {0, 4} on the grid
  std::vector<Row> rows;
  std::vector<size_t> zero_rows;  // indices of zero-locus rows
};

NearSymplecticReport check_near_symplectic(const NearSymplecticForm& w, const GridSpec& grid);

/// Pointwise coefficient norm sqrt(sum_{a<b} omega_ab^2).
double pointwise_norm(const NearSymplecticForm& w, std::span<const double> x);

struct ContrastRow {
  double radius = 0.0;
  double omega_norm = 0.0;
  double area_ratio = 0.0;
};

struct ContrastReport {
  std::vector<ContrastRow> rows;
  double omega_slope = 0.0;
  double ratio_slope = 0.0;
};

/// Radial comparison along (t0, r, 0, 0): the pointwise norm of omega grows
/// linearly while the fold leaf area ratio blows up like 1/r. Radii must be
/// positive and strictly decreasing.
ContrastReport contrast_report(const NearSymplecticForm& w, const PoissonStructure& fold,
                               std::vector<double> radii);

}  // namespace ff
