#ifndef UDWQFIM_VERIFY_HPP
#define UDWQFIM_VERIFY_HPP

#include <string>
#include <vector>

#include "udwqfim/sweep.hpp"

// Self-verification suite. `Fast` runs the oracle-equivalence and
// closed-form checks on coarse grids; `Full` runs every acceptance
// criterion at its stated tolerance, including the runtime budgets.

namespace udwqfim {

enum class VerifyLevel { Fast, Full };

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_residual = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  // Fixture disagreements are findings, not failures; they are listed
  // here so they are never silently ignored.
  std::vector<FormulaDiscrepancy> discrepancies;

  bool all_pass() const;
};

VerifyReport run_verification(VerifyLevel level);

// Reference constructions used only for verification; the production
// pipeline never consults them.

// SLD matrices of the noiseless state in their published closed form.
Matrix4 reference_sld_delta0(const ModelPoint& p);
Matrix4 reference_sld_T(const ModelPoint& p);

// Block-coefficient closed form of pinv(eta) for an X-state, assembled
// entry by entry from the slot values.
Matrix16 reference_eta_inverse(const DensityMatrix& rho);

// The common eigenbasis shared by the two noiseless SLDs.
std::vector<Eigen::Vector4cd> reference_common_eigenbasis();

}  // namespace udwqfim

#endif
