#include "ff/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace ff {

int rank_exact(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  for (const auto& r : m)
    if (r.size() != cols) throw std::invalid_argument("rank_exact: ragged matrix");
  int rank = 0;
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t pivot = row;
    while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[row], m[pivot]);
    for (size_t r = row + 1; r < rows; ++r) {
      if (m[r][col].is_zero()) continue;
      Rational f = m[r][col] / m[row][col];
      for (size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

namespace {

double rank_cutoff(const Eigen::VectorXd& sv, double rel_tol) {
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  double scale = smax > rel_tol ? smax : 1.0;
  return rel_tol * scale;
}

}  // namespace

int rank_numeric(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& sv = svd.singularValues();
  double cutoff = rank_cutoff(sv, rel_tol);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return rank;
}

Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                               double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  double cutoff = rank_cutoff(sv, rel_tol);
  Eigen::VectorXd z = svd.matrixU().transpose() * b;
  for (int i = 0; i < sv.size(); ++i) z(i) = sv(i) > cutoff ? z(i) / sv(i) : 0.0;
  return svd.matrixV() * z;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  double cutoff = rank_cutoff(sv, rel_tol);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  int n = static_cast<int>(a.cols());
  return svd.matrixV().rightCols(n - rank);
}

LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_loglog: need at least two samples");
  size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> lx(n), ly(n);
  for (size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0) || !(y[i] > 0))
      throw std::invalid_argument("fit_loglog: samples must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double det = n * sxx - sx * sx;
  if (det == 0) throw std::invalid_argument("fit_loglog: degenerate abscissae");
  LogLogFit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (size_t i = 0; i < n; ++i) {
    double r = std::abs(ly[i] - (fit.slope * lx[i] + fit.intercept));
    if (r > fit.max_residual) fit.max_residual = r;
  }
  return fit;
}

}  // namespace ff
