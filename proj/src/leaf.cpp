#include "ff/leaf.hpp"

#include <cmath>
#include <stdexcept>

#include "ff/linalg.hpp"
#include "ff/models.hpp"

namespace ff {

namespace {

Eigen::VectorXd to_eigen(std::span<const double> x) {
  Eigen::VectorXd v(static_cast<int>(x.size()));
  for (size_t i = 0; i < x.size(); ++i) v(static_cast<int>(i)) = x[i];
  return v;
}

std::vector<double> to_vec(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

LeafFrame leaf_frame(const PoissonStructure& p, std::span<const double> q) {
  int n = p.chart.dimension();
  if (static_cast<int>(q.size()) != n) throw std::invalid_argument("leaf_frame: bad point");
  if (rank_at(p.bivector, q) != 2)
    throw std::invalid_argument("leaf_frame: rank 2 required at the base point");

  Eigen::MatrixXd plane;  // n x 2, columns spanning the leaf tangent plane
  bool from_casimirs = static_cast<int>(p.casimirs.size()) == n - 2 && n >= 3;
  if (from_casimirs) {
    Eigen::MatrixXd grads(n - 2, n);
    for (int a = 0; a < n - 2; ++a) {
      std::vector<double> g = p.casimirs[a].gradient(q);
      for (int l = 0; l < n; ++l) grads(a, l) = g[l];
    }
    Eigen::MatrixXd ker = null_space(grads);
    if (ker.cols() != 2)
      from_casimirs = false;  // dependent Casimir gradients; fall back to the anchor range
    else
      plane = ker;
  }
  if (!from_casimirs) {
    Eigen::MatrixXd m = bivector_matrix(p.bivector, q);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
    plane = svd.matrixU().leftCols(2);
  }

  LeafFrame frame;
  frame.point.assign(q.begin(), q.end());
  frame.u = to_vec(plane.col(0));
  frame.v = to_vec(plane.col(1));

  double o = 0.0;
  o = std::max(o, std::abs(plane.col(0).dot(plane.col(0)) - 1.0));
  o = std::max(o, std::abs(plane.col(1).dot(plane.col(1)) - 1.0));
  o = std::max(o, std::abs(plane.col(0).dot(plane.col(1))));
  frame.orthonormality_residual = o;

  double c = 0.0;
  for (const ScalarField& f : p.casimirs) {
    std::vector<double> g = f.gradient(q);
    double scale = 1.0, du = 0.0, dv = 0.0;
    for (int l = 0; l < n; ++l) {
      du += g[l] * frame.u[l];
      dv += g[l] * frame.v[l];
      scale = std::max(scale, std::abs(g[l]));
    }
    c = std::max(c, std::max(std::abs(du), std::abs(dv)) / scale);
  }
  frame.casimir_residual = c;

  if (leaf_form(p, q, frame.u, frame.v) < 0)
    for (double& x : frame.v) x = -x;
  return frame;
}

std::vector<double> covector_lift(const PoissonStructure& p, std::span<const double> q,
                                  std::span<const double> w) {
  int n = p.chart.dimension();
  if (static_cast<int>(q.size()) != n || static_cast<int>(w.size()) != n)
    throw std::invalid_argument("covector_lift: bad point or vector");
  Eigen::MatrixXd a = bivector_matrix(p.bivector, q);
  Eigen::VectorXd b = to_eigen(w);
  Eigen::VectorXd alpha = min_norm_solve(a, b);
  double wn = b.norm();
  double res = (a * alpha - b).norm();
  if (res > 1e-10 * std::max(wn, 1e-300))
    throw std::invalid_argument("covector_lift: vector is not tangent to the leaf");
  return to_vec(alpha);
}

double leaf_form(const PoissonStructure& p, std::span<const double> q,
                 std::span<const double> u, std::span<const double> v) {
  std::vector<double> alpha = covector_lift(p, q, u);
  double acc = 0.0;
  for (size_t i = 0; i < v.size(); ++i) acc += alpha[i] * v[i];
  return acc;
}

double area_form_ratio(const PoissonStructure& p, std::span<const double> q) {
  LeafFrame frame = leaf_frame(p, q);
  return leaf_form(p, q, frame.u, frame.v);
}

std::vector<double> ApproachPath::point(double r) const {
  std::vector<double> x(base);
  for (size_t i = 0; i < x.size(); ++i) x[i] += r * direction[i];
  return x;
}

ScalingFit scaling_fit(const PoissonStructure& p, const ApproachPath& path,
                       std::vector<double> radii) {
  if (radii.size() < 2) throw std::invalid_argument("scaling_fit: need at least two radii");
  for (size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0)) throw std::invalid_argument("scaling_fit: radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1]))
      throw std::invalid_argument("scaling_fit: radii must be strictly decreasing");
  }
  if (path.base.size() != path.direction.size() ||
      static_cast<int>(path.base.size()) != p.chart.dimension())
    throw std::invalid_argument("scaling_fit: path dimension mismatch");

  ScalingFit fit;
  fit.radii = std::move(radii);
  fit.values.reserve(fit.radii.size());
  for (double r : fit.radii) {
    std::vector<double> x = path.point(r);
    if (singular_set_distance(p, x) < 1e-12)
      throw std::invalid_argument("scaling_fit: path point hits the singular set");
    fit.values.push_back(area_form_ratio(p, x));
  }
  LogLogFit ll = fit_loglog(fit.radii, fit.values);
  fit.slope = ll.slope;
  fit.max_log_residual = ll.max_residual;
  return fit;
}

std::string to_string(FlowTermination t) {
  switch (t) {
    case FlowTermination::Completed: return "completed";
    case FlowTermination::BoundaryExit: return "boundary-exit";
    case FlowTermination::StepUnderflow: return "step-underflow";
  }
  return "completed";
}

LeafTrajectory integrate_hamiltonian(const PoissonStructure& p, const ScalarField& h,
                                     std::span<const double> x0, double T,
                                     const StepPolicy& policy) {
  int n = p.chart.dimension();
  if (static_cast<int>(x0.size()) != n)
    throw std::invalid_argument("integrate_hamiltonian: bad start point");
  if (!(policy.dt > 0)) throw std::invalid_argument("integrate_hamiltonian: bad step");
  if (T < 0) throw std::invalid_argument("integrate_hamiltonian: negative horizon");
  if (singular_set_distance(p, x0) < 1e-12)
    throw std::invalid_argument(
        "integrate_hamiltonian: start point within 1e-12 of the singular set");
  if (!p.chart.contains(x0, 1e-12))
    throw std::invalid_argument("integrate_hamiltonian: start point outside the domain box");

  std::vector<ScalarField> field = hamiltonian_vector_field(p, h);
  auto eval = [&](const std::vector<double>& x, std::vector<double>& out) {
    for (int i = 0; i < n; ++i) out[i] = field[i].value(x);
  };

  LeafTrajectory traj;
  std::vector<double> x(x0.begin(), x0.end());
  p.chart.wrap(x);

  std::vector<double> c0;
  for (const ScalarField& f : p.casimirs) c0.push_back(f.value(x));
  traj.casimir_drift.assign(p.casimirs.size(), 0.0);

  auto record = [&](double t, const std::vector<double>& pt) {
    traj.times.push_back(t);
    traj.points.push_back(pt);
    std::vector<double> cv;
    for (size_t a = 0; a < p.casimirs.size(); ++a) {
      double v = p.casimirs[a].value(pt);
      cv.push_back(v);
      double rel = std::abs(v - c0[a]) / std::max(1.0, std::abs(c0[a]));
      traj.casimir_drift[a] = std::max(traj.casimir_drift[a], rel);
    }
    traj.casimir_values.push_back(std::move(cv));
  };

  double norm0 = bivector_matrix(p.bivector, x).norm();
  record(0.0, x);

  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  double t = 0.0;
  long step_index = 0;
  while (t < T - 1e-15) {
    double local_norm = bivector_matrix(p.bivector, x).norm();
    int halvings = 0;
    if (norm0 > 0 && local_norm > policy.norm_growth_factor * norm0) {
      double ratio = local_norm / (policy.norm_growth_factor * norm0);
      halvings = static_cast<int>(std::floor(std::log2(ratio))) + 1;
      if (halvings > policy.max_halvings) {
        traj.termination = FlowTermination::StepUnderflow;
        return traj;
      }
    }
    double dt = policy.dt / std::pow(2.0, halvings);
    if (t + dt > T) dt = T - t;

    eval(x, k1);
    for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
    eval(tmp, k2);
    for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
    eval(tmp, k3);
    for (int i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
    eval(tmp, k4);
    for (int i = 0; i < n; ++i)
      tmp[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    p.chart.wrap(tmp);

    if (!p.chart.contains(tmp, 1e-12)) {
      traj.termination = FlowTermination::BoundaryExit;
      return traj;
    }
    x = tmp;
    t += dt;
    ++step_index;
    if (step_index % policy.output_every == 0 || t >= T - 1e-15) record(t, x);
  }
  traj.termination = FlowTermination::Completed;
  return traj;
}

}  // namespace ff
