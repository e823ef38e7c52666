// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "vsdoa/hermitian2.hpp"
#include "vsdoa/spectral.hpp"

namespace vsdoa {

/// Per-bin rescaling applied before combining cross-spectral matrices.
enum class StandardizationScheme { Trace, MinEig, None };

enum class NormKind { L1, L2 };

/// Nonnegative frequency weights with unit norm bound in the declared
/// norm, aligned with the CsdSet they were solved against.
struct WeightVector {
  Eigen::VectorXd a;
  NormKind norm_kind = NormKind::L2;
};

/// Real symmetric PSD quadratic form over the bin weights: for every
/// real a, aᵀ R a equals the squared eigengap of the weighted bin sum.
struct RMatrix {
  Eigen::MatrixXd m;
  std::vector<double> freqs_hz;  // echoed for alignment

  Eigen::Index size() const { return m.rows(); }
};

struct DoaEstimate {
  double azimuth_deg = 0.0;  // axial, [0, 180)
  double eigengap = 0.0;     // lambda_max - lambda_min of `combined`
  WeightVector weights;
  Herm2 combined;
  bool degenerate = false;
  StandardizationScheme scheme = StandardizationScheme::None;
  NormKind norm_kind = NormKind::L2;
};

struct StandardizedCsd {
  CsdSet csd;
  std::vector<std::size_t> dropped_bins;  // indices into the input set
};

/// Trace: divide each bin by q+s (bins with q+s < 1e-30 are dropped).
/// MinEig: divide each bin by max(lambda_min, 1e-9*(q+s)); the clamp
/// keeps rank-deficient bins usable instead of blowing up. None: copy.
/// Throws EmptyBandError when no bins survive.
StandardizedCsd standardize(const CsdSet& csd, StandardizationScheme scheme);

/// Build the symmetric quadratic form from the bin entries.
RMatrix build_r(const CsdSet& csd);

/// Closed-form eigengap of the weighted bin sum; the independent route
/// against which aᵀ R a is checked. Accepts weights of any sign.
double eigengap_direct(const CsdSet& csd, const Eigen::VectorXd& weights);

struct SolveResult {
  WeightVector weights;
  bool degenerate = false;
};

/// 1-norm solver: standard basis vector of the largest diagonal entry,
/// ties toward the lowest frequency index. All-nonpositive diagonal
/// (degenerate form) falls back to uniform weights with the flag set.
SolveResult solve_l1(const RMatrix& r);

/// 2-norm solver: clamp both orientations of the top eigenvector of R
/// onto the nonnegative orthant, renormalize, and keep the one with the
/// larger objective. Degenerate forms fall back as in solve_l1.
SolveResult solve_l2(const RMatrix& r);

/// Entrywise weighted sum of the bins. Throws AlignmentError on length
/// mismatch.
Herm2 combine(const CsdSet& csd, const WeightVector& weights);

/// Full pipeline: standardize, build R, solve under the requested norm,
/// combine, and take the axial angle of the phase-fixed real part of the
/// combined matrix's maximal eigenvector.
DoaEstimate estimate_doa(const CsdSet& csd, StandardizationScheme scheme,
                         NormKind norm_kind);

/// Perturbation bound diagnostic for a single bin P = p_s * u uᵀ + Σ.
struct PropositionBound {
  double lhs = 0.0;   // ‖v_max(P) − u‖₂ after optimal phase alignment
  double rhs = 0.0;   // 2|p̃| / (p_s − 2‖Σ‖_F), NaN when not applicable
  bool applicable = false;  // ‖Σ‖_F < p_s / 2
  double exact_denominator = 0.0;    // p_s − 2‖Σ‖_F
  double relaxed_denominator = 0.0;  // p_s − 2 λmin(Σ) sqrt(1 + C²)
};

/// Throws InvalidSpecError for p_s <= 0 or non-unit u.
PropositionBound proposition_bound(double p_s, const Herm2& sigma,
                                   const Eigen::Vector2d& u);

/// Axial angle in [0, 180) of the phase-fixed real part of m's maximal
/// eigenvector.
double axial_azimuth_deg(const Herm2& m);

/// Shared assembly of a DoaEstimate from a combined matrix (also used by
/// the baseline estimators).
DoaEstimate assemble_estimate(const Herm2& combined, WeightVector weights,
                              bool degenerate, StandardizationScheme scheme,
                              NormKind norm_kind);

/// {"azimuth_deg": .., "eigengap": .., "norm_kind": .., "scheme": ..,
///  "weights": [...], "degenerate": ..}
std::string to_json(const DoaEstimate& estimate);

std::string to_string(StandardizationScheme scheme);
std::string to_string(NormKind norm);
StandardizationScheme scheme_from_string(const std::string& name);
NormKind norm_from_string(const std::string& name);

}  // namespace vsdoa
