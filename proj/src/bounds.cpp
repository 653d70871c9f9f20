#include "udwqfim/bounds.hpp"

#include <cmath>
#include <sstream>

#include "udwqfim/channels.hpp"

namespace udwqfim {

BoundsReport crb(const Eigen::MatrixXd& fisher, const std::vector<Axis>& axes,
                 const std::vector<bool>& unbounded) {
  const int m = static_cast<int>(fisher.rows());
  BoundsReport out;
  out.axes = axes;
  out.var_sim.assign(m, kInf);
  out.var_ind.assign(m, kInf);

  auto flagged = [&](int i) { return i < static_cast<int>(unbounded.size()) && unbounded[i]; };

  for (int i = 0; i < m; ++i) {
    if (!flagged(i) && fisher(i, i) > 0.0) out.var_ind[i] = 1.0 / fisher(i, i);
  }

  out.det_fisher = fisher.determinant();
  double scale = 1.0;
  for (int i = 0; i < m; ++i) scale = std::max(scale, std::abs(fisher(i, i)));
  double scale_m = 1.0;
  for (int i = 0; i < m; ++i) scale_m *= scale;
  out.singular = !(out.det_fisher > 1e-14 * scale_m);

  bool any_flag = false;
  for (int i = 0; i < m; ++i) any_flag = any_flag || flagged(i);

  if (!out.singular && !any_flag) {
    const Eigen::MatrixXd inv = fisher.inverse();
    for (int i = 0; i < m; ++i) out.var_sim[i] = inv(i, i);
    if (m == 2) out.covariance_cross_term = -fisher(0, 1) / out.det_fisher;
    double sum_sim = 0.0, sum_ind = 0.0;
    for (int i = 0; i < m; ++i) {
      sum_sim += out.var_sim[i];
      sum_ind += out.var_ind[i];
    }
    if (std::isfinite(sum_sim) && std::isfinite(sum_ind) && sum_ind > 0.0) {
      out.gamma = (sum_sim / m) / sum_ind;
      out.gamma_defined = true;
    }
  }
  return out;
}

std::optional<double> gamma_ratio(const BoundsReport& report) {
  if (!report.gamma_defined) return std::nullopt;
  return report.gamma;
}

NoiselessBounds noiseless_closed_forms(const ModelPoint& p) {
  if (p.delta0 <= -3.0 || p.delta0 >= 1.0) {
    throw DomainError("noiseless_closed_forms: delta0 must lie strictly inside (-3, 1)");
  }
  const double c = std::cosh(p.omega / p.T);
  const double t4 = p.T * p.T * p.T * p.T;
  NoiselessBounds out;
  out.var_T = 2.0 * t4 * (1.0 + 2.0 * c) * (1.0 + 2.0 * c) /
              (p.omega * p.omega * (p.delta0 + 3.0) * (2.0 + c));
  out.var_delta0 = 3.0 - 2.0 * p.delta0 - p.delta0 * p.delta0;
  return out;
}

DephasingBounds dephasing_closed_forms(const ModelPoint& p, double k) {
  if (k < 0.0 || k > 1.0) {
    throw DomainError("dephasing_closed_forms: kappa must lie in [0,1]");
  }
  if (p.delta0 <= -3.0 || p.delta0 >= 1.0) {
    throw DomainError("dephasing_closed_forms: delta0 must lie strictly inside (-3, 1)");
  }
  const double D = p.delta0;
  const double w = p.omega, T = p.T;
  const double c = std::cosh(w / T);
  const double c2 = std::cosh(2.0 * w / T);
  const double E = std::exp(w / T);
  const double E2 = E * E, E3 = E2 * E, E4 = E2 * E2;
  const double k2 = k * k;
  const double t4 = T * T * T * T;

  DephasingBounds out;
  out.defined = true;

  const double denom_sim =
      (3.0 + D) * w * w *
      (2.0 + 2.0 * (2.0 + D) * k2 + (1.0 - D + 2.0 * (1.0 + D) * k2) * c);
  const double num_T_sim =
      t4 * (1.0 + 2.0 * c) *
      (1.0 - D + (5.0 + 3.0 * D) * k2 + 4.0 * (1.0 + (2.0 + D) * k2) * c -
       (D - 1.0) * (1.0 - k2) * c2);
  out.var_T_sim = num_T_sim / denom_sim;

  const double big =
      -2.0 * E2 * (-12.0 + 5.0 * D - D * D + (3.0 + D + 4.0 * D * D) * k2) -
      (D - 1.0) * (2.0 + k2 + D * (-1.0 + 2.0 * k2)) * (1.0 + E4) +
      (E + E3) * (13.0 + 2.0 * k2 + D * (-10.0 + D - 6.0 * D * k2));
  const double denom_D_sim =
      2.0 * (1.0 + 2.0 * c) *
      (2.0 + 2.0 * (2.0 + D) * k2 + (1.0 - D + 2.0 * (1.0 + D) * k2) * c);
  out.var_delta0_sim = (3.0 + D) * big / (E2 * denom_D_sim);

  const double A =
      (3.0 + D) *
      (2.0 * E2 * (-12.0 + 5.0 * D - D * D + (3.0 + D + 4.0 * D * D) * k2) +
       (D - 1.0) * (2.0 + k2 + D * (-1.0 + 2.0 * k2)) * (1.0 + E4) +
       (E + E3) * (-13.0 - 2.0 * k2 + D * (10.0 + D * (-1.0 + 6.0 * k2))));
  const double fac_plus = 2.0 + k + D * k + (D - 1.0) * (k - 1.0) * c;
  const double fac_minus = -2.0 + k + D * k + (D - 1.0) * (1.0 + k) * c;
  out.var_T_ind = 4.0 * E2 * t4 * (1.0 + 2.0 * c) * (1.0 + 2.0 * c) * fac_plus *
                  fac_minus / (A * w * w);

  const double denom_D_ind =
      1.0 - D + (5.0 + 3.0 * D) * k2 + 4.0 * (1.0 + (2.0 + D) * k2) * c +
      (D - 1.0) * (k2 - 1.0) * c2;
  out.var_delta0_ind = -2.0 * (3.0 + D) * fac_plus * fac_minus / denom_D_ind;

  const double gamma_num =
      (1.0 - D + (5.0 + 3.0 * D) * k2 + 4.0 * (1.0 + (2.0 + D) * k2) * c +
       (D - 1.0) * (k2 - 1.0) * c2) *
      (-12.0 + 5.0 * D - D * D + (3.0 + D + 4.0 * D * D) * k2 +
       (-13.0 - 2.0 * k2 + D * (10.0 + D * (-1.0 + 6.0 * k2))) * c +
       (D - 1.0) * (2.0 - D + k2 + 2.0 * D * k2) * c2);
  const double gamma_den =
      4.0 * (1.0 + 2.0 * c) * fac_plus * fac_minus *
      (2.0 + 2.0 * (2.0 + D) * k2 + (1.0 - D + 2.0 * (1.0 + D) * k2) * c);
  out.gamma = gamma_num / gamma_den;

  if (!std::isfinite(out.var_T_sim) || !std::isfinite(out.var_delta0_sim) ||
      !std::isfinite(out.var_T_ind) || !std::isfinite(out.var_delta0_ind) ||
      !std::isfinite(out.gamma)) {
    out.defined = false;
  }
  return out;
}

std::vector<FormulaDiscrepancy> compare_dephasing_fixtures(const ModelPoint& p,
                                                           double kappa_value,
                                                           double rel_tol) {
  const DephasingBounds fix = dephasing_closed_forms(p, kappa_value);

  DensityMatrix rho = apply_dephasing(stationary_state(p), kappa_value);
  TangentSet tg = tangent_set(p, {Axis::T, Axis::Delta0});
  for (Matrix4& d : tg.derivatives) d = dephasing_map(d, kappa_value);
  const FisherResult fr = qfim_vectorized(rho, tg);
  const BoundsReport br = crb(fr.fisher, tg.axes, fr.unbounded);

  std::ostringstream pt;
  pt << "T=" << p.T << " omega=" << p.omega << " delta0=" << p.delta0
     << " kappa=" << kappa_value;

  std::vector<FormulaDiscrepancy> findings;
  auto check = [&](const std::string& name, double fixture, double pipeline) {
    if (!std::isfinite(fixture) || !std::isfinite(pipeline)) {
      findings.push_back({name, pt.str(), fixture, pipeline, kInf});
      return;
    }
    const double rel = std::abs(fixture - pipeline) /
                       std::max(1e-300, std::abs(pipeline));
    if (rel > rel_tol) findings.push_back({name, pt.str(), fixture, pipeline, rel});
  };
  check("var_T_sim", fix.var_T_sim, br.var_sim[0]);
  check("var_delta0_sim", fix.var_delta0_sim, br.var_sim[1]);
  check("var_T_ind", fix.var_T_ind, br.var_ind[0]);
  check("var_delta0_ind", fix.var_delta0_ind, br.var_ind[1]);
  if (br.gamma_defined) check("gamma", fix.gamma, br.gamma);
  return findings;
}

}  // namespace udwqfim
