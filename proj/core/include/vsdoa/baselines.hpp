// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vsdoa/eigengap.hpp"
#include "vsdoa/signal_model.hpp"
#include "vsdoa/spectral.hpp"

namespace vsdoa {

/// Broadband covariance competitor: linear-phase FIR band-pass to
/// [f_lo, f_hi], 2x2 time-domain sample covariance over the steady-state
/// samples, azimuth of its maximal eigenvector. The weights field stays
/// empty; degenerate is set when the covariance eigengap falls below
/// 1e-6 of its trace.
DoaEstimate covariance_doa(const MultiChannelRecord& record, double f_lo_hz,
                           double f_hi_hz);

/// Equal weighting of every (standardized) bin, unit 2-norm.
DoaEstimate uniform_weight_doa(const CsdSet& csd, StandardizationScheme scheme);

}  // namespace vsdoa
