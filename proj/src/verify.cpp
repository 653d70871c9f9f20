#include "udwqfim/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

namespace udwqfim {

bool VerifyReport::all_pass() const {
  for (const CheckResult& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

Matrix4 reference_sld_delta0(const ModelPoint& p) {
  const double D = p.delta0;
  const double corner = 1.0 / (3.0 + D);
  const double mid_diag = (1.0 + D) / ((D + 3.0) * (D - 1.0));
  const double mid_off = -2.0 / ((D + 3.0) * (D - 1.0));
  Matrix4 l = Matrix4::Zero();
  l(0, 0) = corner;
  l(3, 3) = corner;
  l(1, 1) = mid_diag;
  l(2, 2) = mid_diag;
  l(1, 2) = mid_off;
  l(2, 1) = mid_off;
  return l;
}

Matrix4 reference_sld_T(const ModelPoint& p) {
  const double w = p.omega, T = p.T;
  const double E = std::exp(w / T);
  const double c = std::cosh(w / T);
  const double mid = w * std::sinh(w / T) / (T * T * (1.0 + 2.0 * c));
  Matrix4 l = Matrix4::Zero();
  l(0, 0) = (1.0 + 2.0 * E) * w / (T * T * (1.0 + 2.0 * c));
  l(3, 3) = -(2.0 + E) * w / ((1.0 + E + E * E) * T * T);
  l(1, 1) = mid;
  l(2, 2) = mid;
  l(1, 2) = mid;
  l(2, 1) = mid;
  return l;
}

Matrix16 reference_eta_inverse(const DensityMatrix& rho) {
  const double x = std::real(rho.corner_ee());
  const double z = std::real(rho.mid());
  const double y = std::real(rho.corner_gg());
  const double d = std::real(rho.coh());

  const double a1 = 1.0 / (2.0 * x);
  const double a2 = (x + z) / ((x + z) * (x + z) - d * d);
  const double a3 = -d / ((x + z) * (x + z) - d * d);
  const double a4 = 1.0 / (x + y);
  const double b2 = (2.0 * z * z - d * d) / (4.0 * z * (z * z - d * d));
  const double b3 = d / (4.0 * (d * d - z * z));
  const double b4 = (y + z) / ((y + z) * (y + z) - d * d);
  const double g3 = -d / ((y + z) * (y + z) - d * d);
  const double g4 = 1.0 / (2.0 * y);
  const double x2 = d / (4.0 * (d * d - z * z));
  const double x3 = d * d / (4.0 * z * (z * z - d * d));

  Matrix16 out = Matrix16::Zero();
  auto set = [&out](int i, int j, double v) {
    out(i, j) = v;
    out(j, i) = v;
  };
  // First diagonal block.
  set(0, 0, a1);
  set(1, 1, a2);
  set(2, 2, a2);
  set(1, 2, a3);
  set(3, 3, a4);
  // Middle diagonal blocks.
  for (int blk : {4, 8}) {
    set(blk + 0, blk + 0, a2);
    set(blk + 1, blk + 1, b2);
    set(blk + 2, blk + 2, b2);
    set(blk + 1, blk + 2, b3);
    set(blk + 3, blk + 3, b4);
  }
  // Middle off-diagonal block.
  set(4, 8, a3);
  set(5, 9, x2);
  set(6, 10, x2);
  set(5, 10, x3);
  set(6, 9, x3);
  set(7, 11, g3);
  // Last diagonal block.
  set(12, 12, a4);
  set(13, 13, b4);
  set(14, 14, b4);
  set(13, 14, g3);
  set(15, 15, g4);
  return out;
}

std::vector<Eigen::Vector4cd> reference_common_eigenbasis() {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Eigen::Vector4cd> basis(4, Eigen::Vector4cd::Zero());
  basis[0](3) = 1.0;
  basis[1](1) = r;
  basis[1](2) = r;
  basis[2](1) = -r;
  basis[2](2) = r;
  basis[3](0) = 1.0;
  return basis;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string describe(double worst, const std::string& extra = "") {
  std::ostringstream os;
  os << "max residual " << worst;
  if (!extra.empty()) os << "; " << extra;
  return os.str();
}

PointOutput eval_noiseless(double T, double w, double D,
                           std::vector<Axis> estimate = {Axis::T, Axis::Delta0}) {
  PointConfig pc;
  pc.T = T;
  pc.omega = w;
  pc.delta0 = D;
  pc.channel = ChannelKind::None;
  pc.estimate = std::move(estimate);
  return evaluate_point(pc);
}

PointOutput eval_dephased(double T, double w, double D, double kap,
                          std::vector<Axis> estimate = {Axis::T, Axis::Delta0}) {
  PointConfig pc;
  pc.T = T;
  pc.omega = w;
  pc.delta0 = D;
  pc.channel = ChannelKind::Dephasing;
  pc.channel_params["kappa"] = kap;
  pc.estimate = std::move(estimate);
  return evaluate_point(pc);
}

PointOutput eval_kraus(double T, double w, double D, ChannelKind kind, double s,
                       std::vector<Axis> estimate = {Axis::T, Axis::Delta0}) {
  PointConfig pc;
  pc.T = T;
  pc.omega = w;
  pc.delta0 = D;
  pc.channel = kind;
  pc.channel_params["s"] = s;
  pc.estimate = std::move(estimate);
  return evaluate_point(pc);
}

struct GridSpec {
  std::vector<double> deltas, temps, omegas;
};

GridSpec acceptance_grid(bool fast) {
  GridSpec g;
  if (fast) {
    g.deltas = {-2.9, -1.7, -0.9, 0.3, 0.9};
    g.temps = {0.5, 1.0};
    g.omegas = {1.0};
  } else {
    for (int k = 0; k < 10; ++k) g.deltas.push_back(-2.9 + 0.4 * k);
    g.deltas.push_back(0.9);
    g.temps = {0.1, 0.5, 1.0, 2.0};
    g.omegas = {0.5, 1.0, 3.0};
  }
  return g;
}

CheckResult crit_var_delta0(bool fast) {
  CheckResult res{"criterion 1: noiseless Var(delta0) closed form", true, 0.0, ""};
  const auto t0 = Clock::now();
  const GridSpec g = acceptance_grid(fast);
  double worst_rel = 0.0, worst_spread = 0.0;
  for (double D : g.deltas) {
    const double closed = 3.0 - 2.0 * D - D * D;
    double lo = kInf, hi = -kInf;
    for (double T : g.temps) {
      for (double w : g.omegas) {
        const double v = eval_noiseless(T, w, D).bounds.var_sim[1];
        worst_rel = std::max(worst_rel, std::abs(v / closed - 1.0));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    worst_spread = std::max(worst_spread, (hi - lo) / closed);
  }
  const double elapsed = seconds_since(t0);
  res.max_residual = worst_rel;
  res.pass = worst_rel <= 1e-8 && worst_spread <= 1e-9 && (fast || elapsed < 1.0);
  std::ostringstream os;
  os << "max rel dev " << worst_rel << "; T/omega spread " << worst_spread
     << "; elapsed " << elapsed << " s";
  res.detail = os.str();
  return res;
}

CheckResult crit_var_T(bool fast) {
  CheckResult res{"criterion 2: noiseless Var(T) closed form", true, 0.0, ""};
  const GridSpec g = acceptance_grid(fast);
  double worst = 0.0;
  for (double D : g.deltas) {
    for (double T : g.temps) {
      for (double w : g.omegas) {
        const ModelPoint p(T, w, D);
        const double closed = noiseless_closed_forms(p).var_T;
        const double v = eval_noiseless(T, w, D).bounds.var_sim[0];
        worst = std::max(worst, std::abs(v / closed - 1.0));
      }
    }
  }
  const double spot = eval_noiseless(1.0, 1.0, 0.0).bounds.var_sim[0];
  const bool spot_ok = std::abs(spot - 3.1417) < 1e-3;
  res.max_residual = worst;
  res.pass = worst <= 1e-8 && spot_ok;
  res.detail = describe(worst, "spot Var(T)(1,1,0) = " + format_value(spot));
  return res;
}

CheckResult crit_compatibility_gamma(bool fast) {
  CheckResult res{"criterion 3: noiseless gamma = 0.5 and diagonal Fisher", true, 0.0, ""};
  const GridSpec g = acceptance_grid(fast);
  double worst = 0.0;
  for (double D : g.deltas) {
    for (double T : g.temps) {
      for (double w : g.omegas) {
        const PointOutput out = eval_noiseless(T, w, D);
        worst = std::max(worst, std::abs(out.bounds.gamma - 0.5));
        worst = std::max(worst, std::abs(out.report.fisher.fisher(0, 1)));
      }
    }
  }
  res.max_residual = worst;
  res.pass = worst <= 1e-10;
  res.detail = describe(worst);
  return res;
}

CheckResult crit_sld_fidelity(bool fast) {
  CheckResult res{"criterion 4: SLD closed forms, commutation, common eigenbasis",
                  true, 0.0, ""};
  std::vector<std::array<double, 3>> pts = {{0.8, 1.3, -1.2}, {1.0, 1.0, 0.0}};
  if (!fast) {
    pts.push_back({0.5, 2.0, -2.5});
    pts.push_back({2.0, 0.5, 0.5});
    pts.push_back({0.3, 0.7, -1.9});
  }
  double worst = 0.0;
  bool ok = true;
  const auto basis = reference_common_eigenbasis();
  for (const auto& [T, w, D] : pts) {
    const ModelPoint p(T, w, D);
    const DensityMatrix rho = stationary_state(p);
    const TangentSet tg = tangent_set(p, {Axis::Delta0, Axis::T});
    const QfimReport report = qfim_report(rho, tg);
    const Matrix4 ld = report.slds[0], lt = report.slds[1];
    const Matrix4 ld_ref = reference_sld_delta0(p), lt_ref = reference_sld_T(p);

    const double scale = std::max({1.0, max_abs(ld_ref), max_abs(lt_ref)});
    const double dev = std::max(max_abs(ld - ld_ref), max_abs(lt - lt_ref)) / scale;
    const double comm = report.compat.commutator_norms(0, 1) / (scale * scale);
    worst = std::max({worst, dev, comm});
    ok = ok && report.compat.shared_eigenbasis;
    for (const auto& v : basis) {
      for (const Matrix4& l : {ld, lt}) {
        const Complex lam = v.dot(l * v);
        const double resid = (l * v - lam * v).norm() / std::max(1.0, l.norm());
        worst = std::max(worst, resid);
        ok = ok && resid <= 1e-8;
      }
    }
  }
  res.max_residual = worst;
  res.pass = ok && worst <= 1e-10;
  res.detail = describe(worst);
  return res;
}

CheckResult crit_oracle_equivalence(bool fast) {
  CheckResult res{"criterion 5: vectorized vs spectral QFIM on randomized samples",
                  true, 0.0, ""};
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20250811);
  std::uniform_real_distribution<double> uT(0.1, 2.0), uw(0.2, 3.0),
      uD(-2.9, 0.9), us(0.0, 1.0);
  const int n = fast ? 15 : 100;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const ModelPoint p(uT(rng), uw(rng), uD(rng));
    const double s = us(rng);
    const int pick = static_cast<int>(rng() % 4);
    auto channel = [&](const Matrix4& m) -> Matrix4 {
      switch (pick) {
        case 0: return dephasing_map(m, s);
        case 1: return local_product_map(m, kraus_ad(s));
        case 2: return local_product_map(m, kraus_pf(s));
        default: return local_product_map(m, kraus_pd(s));
      }
    };
    const DensityMatrix rho = DensityMatrix::from_matrix(channel(stationary_state(p).matrix()));
    TangentSet tg = tangent_set(p, {Axis::T, Axis::Delta0});
    for (Matrix4& d : tg.derivatives) d = channel(d);
    const Eigen::MatrixXd fv = qfim_vectorized(rho, tg).fisher;
    const Eigen::MatrixXd fs = qfim_spectral(rho, tg);
    const double scale = std::max(1.0, fv.cwiseAbs().maxCoeff());
    worst = std::max(worst, (fv - fs).cwiseAbs().maxCoeff() / scale);
  }
  const double elapsed = seconds_since(t0);
  res.max_residual = worst;
  res.pass = worst <= 1e-8 && (fast || elapsed < 5.0);
  std::ostringstream os;
  os << "max rel dev " << worst << " over " << n << " samples; elapsed "
     << elapsed << " s";
  res.detail = os.str();
  return res;
}

CheckResult crit_eta_inverse_fixture(bool fast) {
  CheckResult res{"criterion 6: pinv(eta) matches block-coefficient closed form",
                  true, 0.0, ""};
  std::mt19937_64 rng(777001);
  std::uniform_real_distribution<double> uT(0.3, 2.0), uw(0.3, 2.0), uD(-2.5, 0.5);
  const int n = fast ? 5 : 20;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const ModelPoint p(uT(rng), uw(rng), uD(rng));
    const DensityMatrix rho = stationary_state(p);
    const Matrix numeric = pinv_psd(build_eta(rho));
    const Matrix16 closed = reference_eta_inverse(rho);
    const double scale = std::max(1.0, max_abs(closed));
    worst = std::max(worst, max_abs(numeric - closed) / scale);
  }
  res.max_residual = worst;
  res.pass = worst <= 1e-10;
  res.detail = describe(worst);
  return res;
}

CheckResult crit_channel_contracts(bool fast) {
  CheckResult res{"criterion 7: channel closure, trace, positivity, dephasing factors",
                  true, 0.0, ""};
  double worst = 0.0;
  bool ok = true;

  std::vector<double> strengths;
  const double step = fast ? 0.5 : 0.05;
  for (double s = 0.0; s <= 1.0 + 1e-12; s += step) strengths.push_back(std::min(s, 1.0));

  std::vector<ModelPoint> states;
  for (double T : fast ? std::vector<double>{0.5} : std::vector<double>{0.1, 0.5, 2.0}) {
    for (double w : fast ? std::vector<double>{1.0} : std::vector<double>{0.5, 1.0, 3.0}) {
      for (double D : {-2.9, -1.0, 0.0, 0.9}) states.emplace_back(T, w, D);
    }
  }

  for (double s : strengths) {
    for (const KrausFamily& fam : {kraus_ad(s), kraus_pf(s), kraus_pd(s)}) {
      worst = std::max(worst, fam.closure_residual());
      ok = ok && fam.closure_residual() <= 1e-12;
    }
  }

  for (const ModelPoint& p : states) {
    const DensityMatrix rho = stationary_state(p);
    const Complex coh_in = rho.coh();
    for (double s : strengths) {
      struct Case {
        Matrix4 out;
        double coh_factor;  // expected coherence scaling; NaN if not checked
      };
      std::vector<Case> cases = {
          {local_product_map(rho.matrix(), kraus_ad(s)), std::nan("")},
          {local_product_map(rho.matrix(), kraus_pf(s)), (1 - 2 * s) * (1 - 2 * s)},
          {local_product_map(rho.matrix(), kraus_pd(s)), 1 - s},
          {dephasing_map(rho.matrix(), s), s}};
      for (const Case& c : cases) {
        const double tr = std::abs(c.out.trace() - Complex(1.0, 0.0));
        const double mineig = eigh(c.out).eigenvalues.minCoeff();
        worst = std::max(worst, tr);
        ok = ok && tr <= 1e-12 && mineig >= -1e-10;
        if (!std::isnan(c.coh_factor)) {
          const double dev = std::abs(c.out(1, 2) - c.coh_factor * coh_in);
          const double bound = std::max(1e-12, 1e-10 * std::abs(coh_in));
          worst = std::max(worst, dev);
          ok = ok && dev <= bound;
        }
      }
      // Amplitude-damping population flow derived from the Kraus sum.
      const Matrix4 ad = local_product_map(rho.matrix(), kraus_ad(s));
      const Complex ee = rho.corner_ee() + 2.0 * s * rho.mid() +
                         s * s * rho.corner_gg();
      const Complex gg = (1.0 - s) * (1.0 - s) * rho.corner_gg();
      const double ad_dev = std::max(std::abs(ad(0, 0) - ee), std::abs(ad(3, 3) - gg));
      worst = std::max(worst, ad_dev);
      ok = ok && ad_dev <= 1e-12;
    }

    // Identity endpoints on X-states.
    for (const Matrix4& out :
         {local_product_map(rho.matrix(), kraus_ad(0.0)),
          local_product_map(rho.matrix(), kraus_pf(0.0)),
          local_product_map(rho.matrix(), kraus_pf(1.0)),
          local_product_map(rho.matrix(), kraus_pd(0.0))}) {
      const double dev = max_abs(out - rho.matrix());
      worst = std::max(worst, dev);
      ok = ok && dev <= 1e-12;
    }
  }

  // Correlated pure-dephasing Pauli noise against the kappa map.
  const ModelPoint p0(0.5, 1.0, -2.0);
  const DensityMatrix rho0 = stationary_state(p0);
  for (double tau : {0.1, 5.0}) {
    const MemoryKernelSpec spec_f(tau, 0.0);
    for (double mu : fast ? std::vector<double>{0.0, 0.6} : std::vector<double>{0.0, 0.3, 0.6, 1.0}) {
      for (double t : {0.3, 1.0, 2.4, 5.0}) {
        const double f = memory_kernel(t, spec_f);
        const double q = (1.0 - f) / 2.0;
        const CorrelatedPauliSpec pauli_spec({1.0 - q, 0.0, 0.0, q}, mu);
        const double kap = f * f + (1.0 - f * f) * mu;
        const Matrix4 via_pauli = correlated_pauli_map(rho0.matrix(), pauli_spec);
        const Matrix4 via_kappa = dephasing_map(rho0.matrix(), kap);
        const double dev = max_abs(via_pauli - via_kappa);
        worst = std::max(worst, dev);
        ok = ok && dev <= 1e-12;
      }
    }
  }

  // Kernel behavior: bounded, kappa in [mu, 1], regime shape.
  for (double tau : {0.1, 0.24, 0.25, 0.26, 0.5, 5.0}) {
    const MemoryKernelSpec spec(tau, 0.6);
    double prev_kappa = kInf;
    bool kappa_monotone = true;
    for (int i = 0; i <= 400; ++i) {
      const double t = 20.0 * i / 400.0;
      const double f = memory_kernel(t, spec);
      const double k = kappa(t, spec);
      ok = ok && std::abs(f) <= 1.0 + 1e-12;
      ok = ok && k >= spec.mu - 1e-12 && k <= 1.0 + 1e-12;
      kappa_monotone = kappa_monotone && k <= prev_kappa + 1e-12;
      prev_kappa = k;
    }
    if (!spec.non_markovian()) ok = ok && kappa_monotone;
  }

  res.max_residual = worst;
  res.pass = ok;
  res.detail = describe(worst);
  return res;
}

int derivative_sign_changes(const std::vector<double>& v) {
  int changes = 0;
  int last = 0;
  for (size_t i = 1; i < v.size(); ++i) {
    const double d = v[i] - v[i - 1];
    if (d == 0.0) continue;
    const int sign = d > 0 ? 1 : -1;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

CheckResult crit_regimes() {
  CheckResult res{"criterion 8: Markov/non-Markov, PF symmetry, AD/PD monotonicity, gamma range",
                  true, 0.0, ""};
  bool ok = true;
  std::ostringstream notes;

  const double T = 0.5, w = 1.0, D = -2.0;

  // Markovian sweeps: nondecreasing and convergent.
  {
    const MemoryKernelSpec spec(0.1, 0.6);
    std::vector<double> vt, vd;
    for (int i = 0; i <= 200; ++i) {
      const double t = 20.0 * i / 200.0;
      const PointOutput out = eval_dephased(T, w, D, kappa(t, spec));
      vt.push_back(out.bounds.var_sim[0]);
      vd.push_back(out.bounds.var_sim[1]);
    }
    for (const auto& v : {vt, vd}) {
      for (size_t i = 1; i < v.size(); ++i) {
        ok = ok && v[i] >= v[i - 1] - 1e-12 * std::abs(v[i - 1]);
      }
      double lo = kInf, hi = -kInf;
      for (size_t i = v.size() - v.size() / 10; i < v.size(); ++i) {
        lo = std::min(lo, v[i]);
        hi = std::max(hi, v[i]);
      }
      ok = ok && (hi - lo) < 0.01 * v.back();
    }
    notes << "markov ok; ";
  }

  // Non-Markovian sweeps: oscillatory.
  {
    const MemoryKernelSpec spec(5.0, 0.6);
    std::vector<double> vt, vd;
    for (int i = 1; i <= 400; ++i) {
      const double t = 20.0 * i / 400.0;
      const PointOutput out = eval_dephased(T, w, D, kappa(t, spec));
      vt.push_back(out.bounds.var_sim[0]);
      vd.push_back(out.bounds.var_sim[1]);
    }
    const int ct = derivative_sign_changes(vt);
    const int cd = derivative_sign_changes(vd);
    ok = ok && ct >= 2 && cd >= 2;
    notes << "non-markov sign changes T/D " << ct << "/" << cd << "; ";
  }

  double worst = 0.0;
  // Phase-flip symmetry s <-> 1-s and noiseless endpoints.
  {
    const double Tpf = 0.3, wpf = 0.5;
    const ModelPoint p(Tpf, wpf, D);
    const NoiselessBounds noiseless = noiseless_closed_forms(p);
    std::vector<double> vt(101), vd(101), gm(101);
    for (int i = 0; i <= 100; ++i) {
      const PointOutput out = eval_kraus(Tpf, wpf, D, ChannelKind::PF, i / 100.0);
      vt[i] = out.bounds.var_sim[0];
      vd[i] = out.bounds.var_sim[1];
      gm[i] = out.bounds.gamma;
    }
    for (int i = 0; i <= 100; ++i) {
      worst = std::max(worst, std::abs(vt[i] - vt[100 - i]) / std::max(1.0, vt[i]));
      worst = std::max(worst, std::abs(vd[i] - vd[100 - i]) / std::max(1.0, vd[i]));
      worst = std::max(worst, std::abs(gm[i] - gm[100 - i]));
    }
    ok = ok && worst <= 1e-10;
    const double end_dev = std::max(
        {std::abs(vt[0] / noiseless.var_T - 1.0), std::abs(vt[100] / noiseless.var_T - 1.0),
         std::abs(vd[0] / noiseless.var_delta0 - 1.0),
         std::abs(vd[100] / noiseless.var_delta0 - 1.0), std::abs(gm[0] - 0.5),
         std::abs(gm[100] - 0.5)});
    ok = ok && end_dev <= 1e-8;
    worst = std::max(worst, end_dev);
  }

  // AD/PD monotone in s below the rank-collapse region.
  {
    std::vector<double> ad_t, ad_d, pd_t, pd_d;
    for (int i = 0; i <= 17; ++i) {  // s up to 0.85
      const PointOutput out = eval_kraus(T, w, D, ChannelKind::AD, 0.05 * i);
      ad_t.push_back(out.bounds.var_sim[0]);
      ad_d.push_back(out.bounds.var_sim[1]);
    }
    for (int i = 0; i <= 20; ++i) {
      const PointOutput out = eval_kraus(T, w, D, ChannelKind::PD, 0.05 * i);
      pd_t.push_back(out.bounds.var_sim[0]);
      pd_d.push_back(out.bounds.var_sim[1]);
    }
    for (const auto& v : {ad_t, ad_d, pd_t, pd_d}) {
      for (size_t i = 1; i < v.size(); ++i) ok = ok && v[i] >= v[i - 1] - 1e-12;
    }
  }

  // Gamma stays in [0.5, 1) across the tested noisy configurations and
  // returns to 0.5 as the noise vanishes.
  {
    double gmin = kInf, gmax = -kInf;
    auto track = [&](const PointOutput& out) {
      if (!out.bounds.gamma_defined) return;
      gmin = std::min(gmin, out.bounds.gamma);
      gmax = std::max(gmax, out.bounds.gamma);
    };
    for (double tau : {0.1, 5.0}) {
      const MemoryKernelSpec spec(tau, 0.6);
      for (double Tg : {0.1, 0.3, 0.5}) {
        for (double Dg : {-2.0, -1.5, -1.0, -0.5, 0.0}) {
          for (int i = 1; i <= 20; ++i) {
            track(eval_dephased(Tg, 1.0, Dg, kappa(i * 1.0, spec)));
          }
        }
      }
    }
    for (double Tg : {0.2, 0.6, 1.0}) {
      for (double Dg : {-2.0, -1.0, 0.0}) {
        for (int i = 0; i <= 20; ++i) {
          track(eval_kraus(Tg, 0.5, Dg, ChannelKind::PF, i / 20.0));
          track(eval_kraus(Tg, 0.5, Dg, ChannelKind::AD, 0.045 * i));
          track(eval_kraus(Tg, 0.3, Dg, ChannelKind::PD, i / 20.0));
          track(eval_kraus(Tg, 1.0, Dg, ChannelKind::PD, i / 20.0));
        }
      }
    }
    ok = ok && gmin >= 0.5 - 1e-12 && gmax < 1.0;
    notes << "gamma range [" << gmin << ", " << gmax << "]; ";
    const double g_small = eval_dephased(T, w, D, 0.999).bounds.gamma;
    ok = ok && g_small - 0.5 <= 1e-3;
  }

  res.max_residual = worst;
  res.pass = ok;
  res.detail = notes.str() + describe(worst);
  return res;
}

CheckResult crit_omega_axis() {
  CheckResult res{"criterion 9: three-axis QFIM (T, delta0, omega)", true, 0.0, ""};
  bool ok = true;
  double worst = 0.0;
  const std::vector<Axis> axes3 = {Axis::T, Axis::Delta0, Axis::Omega};

  // PSD and oracle agreement across representative channels.
  std::vector<std::pair<ChannelKind, double>> channels = {
      {ChannelKind::None, 0.0}, {ChannelKind::Dephasing, 0.7},
      {ChannelKind::PF, 0.4},   {ChannelKind::AD, 0.3},
      {ChannelKind::PD, 0.6}};
  for (const auto& [kind, s] : channels) {
    for (const auto& [T, w, D] :
         std::vector<std::array<double, 3>>{{0.5, 1.0, -2.0}, {1.0, 0.7, -1.0},
                                            {0.3, 2.0, 0.3}}) {
      const ModelPoint p(T, w, D);
      auto channel = [&, kind = kind, s = s](const Matrix4& m) -> Matrix4 {
        switch (kind) {
          case ChannelKind::Dephasing: return dephasing_map(m, s);
          case ChannelKind::AD: return local_product_map(m, kraus_ad(s));
          case ChannelKind::PF: return local_product_map(m, kraus_pf(s));
          case ChannelKind::PD: return local_product_map(m, kraus_pd(s));
          default: return m;
        }
      };
      const DensityMatrix rho =
          DensityMatrix::from_matrix(channel(stationary_state(p).matrix()));
      TangentSet tg = tangent_set(p, axes3);
      for (Matrix4& d : tg.derivatives) d = channel(d);
      const Eigen::MatrixXd fv = qfim_vectorized(rho, tg).fisher;
      const Eigen::MatrixXd fs = qfim_spectral(rho, tg);
      const double scale = std::max(1.0, fv.cwiseAbs().maxCoeff());
      worst = std::max(worst, (fv - fs).cwiseAbs().maxCoeff() / scale);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fv);
      ok = ok && es.eigenvalues().minCoeff() >= -1e-10 * scale;
    }
  }
  ok = ok && worst <= 1e-8;

  // Var(omega) time sweeps inherit the Markov/non-Markov dichotomy. The
  // three-axis Fisher matrix is singular by construction (T and omega
  // move the state along the same direction), so the individual bound is
  // the finite one.
  for (double tau : {0.1, 5.0}) {
    const MemoryKernelSpec spec(tau, 0.6);
    std::vector<double> vw;
    for (int i = 1; i <= 300; ++i) {
      const double t = 20.0 * i / 300.0;
      const PointOutput out = eval_dephased(0.5, 1.0, -2.0, kappa(t, spec), axes3);
      ok = ok && out.bounds.singular;
      vw.push_back(out.bounds.var_ind[2]);
    }
    if (tau < 0.25) {
      for (size_t i = 1; i < vw.size(); ++i) {
        ok = ok && vw[i] >= vw[i - 1] - 1e-12 * std::abs(vw[i - 1]);
      }
    } else {
      ok = ok && derivative_sign_changes(vw) >= 2;
    }
  }

  res.max_residual = worst;
  res.pass = ok;
  res.detail = describe(worst);
  return res;
}

CheckResult crit_dephasing_fixtures(bool fast, std::vector<FormulaDiscrepancy>* findings) {
  CheckResult res{"criterion 10: dephasing closed-form fixtures", true, 0.0, ""};
  double worst = 0.0;

  // kappa = 1 must reduce every fixture to the noiseless closed forms.
  std::vector<double> deltas = fast ? std::vector<double>{-2.5, 0.0}
                                    : std::vector<double>{-2.5, -1.0, 0.0, 0.5};
  for (double D : deltas) {
    for (double T : {0.5, 1.0}) {
      for (double w : {0.5, 1.0}) {
        const ModelPoint p(T, w, D);
        const NoiselessBounds base = noiseless_closed_forms(p);
        const DephasingBounds fix = dephasing_closed_forms(p, 1.0);
        worst = std::max({worst, std::abs(fix.var_T_sim / base.var_T - 1.0),
                          std::abs(fix.var_delta0_sim / base.var_delta0 - 1.0),
                          std::abs(fix.var_T_ind / base.var_T - 1.0),
                          std::abs(fix.var_delta0_ind / base.var_delta0 - 1.0),
                          std::abs(fix.gamma - 0.5)});
      }
    }
  }
  bool ok = worst <= 1e-8;

  // Pipeline-vs-fixture comparison at interior samples: agreement within
  // 1e-6 relative, or a logged structured finding.
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> uT(0.3, 1.5), uw(0.4, 2.0),
      uD(-2.5, 0.5), uk(0.05, 1.0);
  const int n = fast ? 5 : 20;
  int logged = 0;
  for (int i = 0; i < n; ++i) {
    const ModelPoint p(uT(rng), uw(rng), uD(rng));
    const auto sample = compare_dephasing_fixtures(p, uk(rng));
    logged += static_cast<int>(sample.size());
    if (findings) findings->insert(findings->end(), sample.begin(), sample.end());
  }

  res.max_residual = worst;
  res.pass = ok;
  std::ostringstream os;
  os << "kappa=1 reduction max dev " << worst << "; " << logged
     << " fixture discrepancies logged over " << n << " samples";
  res.detail = os.str();
  return res;
}

CheckResult crit_performance() {
  CheckResult res{"criterion 11: 200x200 sweep under 5 s, parallel byte-identical",
                  true, 0.0, ""};
  std::map<std::string, std::string> kv = {
      {"grid.x.name", "T"},      {"grid.x.start", "0.1"}, {"grid.x.stop", "2.0"},
      {"grid.x.count", "200"},   {"grid.y.name", "delta0"},
      {"grid.y.start", "-2.9"},  {"grid.y.stop", "0.9"},  {"grid.y.count", "200"},
      {"fixed.omega", "1.0"},    {"channel.kind", "dephasing"},
      {"channel.tau", "5.0"},    {"channel.mu", "0.6"},   {"channel.t", "3.0"},
      {"estimate", "T,delta0"}};
  SweepConfig cfg = SweepConfig::from_kv(kv);

  const auto t0 = Clock::now();
  const SweepResult serial = run_sweep(cfg);
  const double elapsed = seconds_since(t0);

  cfg.workers = 4;
  const SweepResult parallel = run_sweep(cfg);

  std::ostringstream a, b;
  emit_csv(serial, a);
  emit_csv(parallel, b);
  const bool identical = a.str() == b.str();

  res.pass = elapsed < 5.0 && identical;
  std::ostringstream os;
  os << "serial elapsed " << elapsed << " s; parallel output "
     << (identical ? "byte-identical" : "DIFFERS");
  res.detail = os.str();
  return res;
}

}  // namespace

VerifyReport run_verification(VerifyLevel level) {
  const bool fast = level == VerifyLevel::Fast;
  VerifyReport report;
  report.checks.push_back(crit_var_delta0(fast));
  report.checks.push_back(crit_var_T(fast));
  report.checks.push_back(crit_compatibility_gamma(fast));
  report.checks.push_back(crit_sld_fidelity(fast));
  report.checks.push_back(crit_oracle_equivalence(fast));
  report.checks.push_back(crit_eta_inverse_fixture(fast));
  report.checks.push_back(crit_channel_contracts(fast));
  if (!fast) {
    report.checks.push_back(crit_regimes());
    report.checks.push_back(crit_omega_axis());
  }
  report.checks.push_back(crit_dephasing_fixtures(fast, &report.discrepancies));
  if (!fast) {
    report.checks.push_back(crit_performance());
  }
  return report;
}

}  // namespace udwqfim
