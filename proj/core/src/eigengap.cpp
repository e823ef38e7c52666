// SPDX-License-Identifier: Apache-2.0
#include "vsdoa/eigengap.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <nlohmann/json.hpp>

#include "vsdoa/errors.hpp"

namespace vsdoa {

namespace {

constexpr double kTraceFloor = 1e-30;
constexpr double kMinEigRelFloor = 1e-9;

/// Axial angle in [0, 180) of the phase-fixed real part of a unit
/// complex 2-vector: rotate so the largest-magnitude entry is real and
/// positive, take the real part, normalize, then atan2.
double axial_azimuth_of(cplx vx, cplx vy) {
  const cplx lead = std::abs(vx) >= std::abs(vy) ? vx : vy;
  const double mag = std::abs(lead);
  if (mag > 0.0) {
    const cplx rot = std::conj(lead) / mag;
    vx *= rot;
    vy *= rot;
  }
  double rx = vx.real(), ry = vy.real();
  const double norm = std::hypot(rx, ry);
  if (norm > 0.0) {
    rx /= norm;
    ry /= norm;
  }
  double deg = std::atan2(ry, rx) * 180.0 / std::numbers::pi;
  deg = std::fmod(deg, 180.0);
  if (deg < 0.0) deg += 180.0;
  if (deg >= 180.0) deg = 0.0;
  return deg;
}

SolveResult uniform_fallback(Eigen::Index n, NormKind norm_kind) {
  SolveResult out;
  out.degenerate = true;
  out.weights.norm_kind = norm_kind;
  const double value = norm_kind == NormKind::L1 ? 1.0 / static_cast<double>(n)
                                                 : 1.0 / std::sqrt(static_cast<double>(n));
  out.weights.a = Eigen::VectorXd::Constant(n, value);
  return out;
}

}  // namespace

double axial_azimuth_deg(const Herm2& m) {
  const Eig2 e = eig2(m);
  return axial_azimuth_of(e.vmax_x, e.vmax_y);
}

DoaEstimate assemble_estimate(const Herm2& combined, WeightVector weights,
                              bool degenerate, StandardizationScheme scheme,
                              NormKind norm_kind) {
  DoaEstimate est;
  est.combined = combined;
  est.weights = std::move(weights);
  est.degenerate = degenerate;
  est.scheme = scheme;
  est.norm_kind = norm_kind;
  est.eigengap = eigengap(combined);
  est.azimuth_deg = degenerate ? 0.0 : axial_azimuth_deg(combined);
  return est;
}

StandardizedCsd standardize(const CsdSet& csd, StandardizationScheme scheme) {
  if (csd.empty()) throw EmptyBandError("standardize: empty bin set");
  StandardizedCsd out;
  out.csd.bin_width_hz = csd.bin_width_hz;
  for (std::size_t i = 0; i < csd.bins.size(); ++i) {
    const CsdBin& bin = csd.bins[i];
    const double trace = bin.q + bin.s;
    if (scheme == StandardizationScheme::None) {
      out.csd.bins.push_back(bin);
      continue;
    }
    if (!(trace >= kTraceFloor)) {
      out.dropped_bins.push_back(i);
      continue;
    }
    double divisor = trace;
    if (scheme == StandardizationScheme::MinEig) {
      // Clamp the divisor for (near-)rank-deficient bins; dividing by the
      // raw minimal eigenvalue would blow up or produce NaNs.
      divisor = std::max(lambda_min(bin.matrix()), kMinEigRelFloor * trace);
    }
    CsdBin scaled = bin;
    const double inv = 1.0 / divisor;
    scaled.q *= inv;
    scaled.s *= inv;
    scaled.r *= inv;
    out.csd.bins.push_back(scaled);
  }
  if (out.csd.bins.empty()) throw EmptyBandError("standardize: every bin was dropped");
  return out;
}

RMatrix build_r(const CsdSet& csd) {
  if (csd.empty()) throw EmptyBandError("build_r: empty bin set");
  const auto n = static_cast<Eigen::Index>(csd.size());
  RMatrix out;
  out.m.resize(n, n);
  out.freqs_hz.reserve(csd.size());
  for (const CsdBin& bin : csd.bins) out.freqs_hz.push_back(bin.freq_hz);
  // Symmetrized real form of the squared-eigengap expansion:
  //   R_ij = T_i T_j - 2 (q_i s_j + q_j s_i) + 4 Re(r_i conj(r_j)),
  // so that aᵀ R a = (eigengap of the weighted sum)^2 for any real a.
  for (Eigen::Index i = 0; i < n; ++i) {
    const CsdBin& bi = csd.bins[static_cast<std::size_t>(i)];
    const double ti = bi.q + bi.s;
    for (Eigen::Index j = i; j < n; ++j) {
      const CsdBin& bj = csd.bins[static_cast<std::size_t>(j)];
      const double tj = bj.q + bj.s;
      const double value = ti * tj - 2.0 * (bi.q * bj.s + bj.q * bi.s) +
                           4.0 * (bi.r.real() * bj.r.real() + bi.r.imag() * bj.r.imag());
      out.m(i, j) = value;
      out.m(j, i) = value;
    }
  }
  return out;
}

double eigengap_direct(const CsdSet& csd, const Eigen::VectorXd& weights) {
  if (static_cast<std::size_t>(weights.size()) != csd.size())
    throw AlignmentError("eigengap_direct: weights/bins length mismatch");
  double a = 0.0, b = 0.0;
  cplx c{0.0, 0.0};
  for (std::size_t i = 0; i < csd.size(); ++i) {
    const double w = weights(static_cast<Eigen::Index>(i));
    a += w * csd.bins[i].q;
    b += w * csd.bins[i].s;
    c += w * csd.bins[i].r;
  }
  return std::hypot(a - b, 2.0 * std::abs(c));
}

SolveResult solve_l1(const RMatrix& r) {
  const Eigen::Index n = r.size();
  if (n == 0) throw EmptyBandError("solve_l1: empty quadratic form");
  Eigen::Index best = 0;
  double best_diag = r.m(0, 0);
  for (Eigen::Index i = 1; i < n; ++i) {
    if (r.m(i, i) > best_diag) {  // ties stay at the lowest index
      best_diag = r.m(i, i);
      best = i;
    }
  }
  if (!(best_diag > 0.0)) return uniform_fallback(n, NormKind::L1);
  SolveResult out;
  out.weights.norm_kind = NormKind::L1;
  out.weights.a = Eigen::VectorXd::Zero(n);
  out.weights.a(best) = 1.0;
  return out;
}

SolveResult solve_l2(const RMatrix& r) {
  const Eigen::Index n = r.size();
  if (n == 0) throw EmptyBandError("solve_l2: empty quadratic form");
  double max_diag = r.m(0, 0);
  for (Eigen::Index i = 1; i < n; ++i) max_diag = std::max(max_diag, r.m(i, i));
  if (!(max_diag > 0.0)) return uniform_fallback(n, NormKind::L2);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(r.m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("solve_l2: eigensolver failed to converge");
  const Eigen::VectorXd v = solver.eigenvectors().col(n - 1);

  const auto clamped = [&](double sign) {
    Eigen::VectorXd c = (sign * v).cwiseMax(0.0);
    const double norm = c.norm();
    if (norm > 0.0) c /= norm;
    return std::make_pair(c, norm > 0.0 ? c.dot(r.m * c) : -1.0);
  };
  auto [pos, f_pos] = clamped(1.0);
  auto [neg, f_neg] = clamped(-1.0);

  SolveResult out;
  out.weights.norm_kind = NormKind::L2;
  if (f_pos > f_neg) {
    out.weights.a = std::move(pos);
  } else if (f_neg > f_pos) {
    out.weights.a = std::move(neg);
  } else {
    // Tie between the two orientations: prefer nonnegative entry sum,
    // then a positive largest-magnitude entry (lowest index on ties).
    const double sum = v.sum();
    double sign = sum > 0.0 ? 1.0 : (sum < 0.0 ? -1.0 : 0.0);
    if (sign == 0.0) {
      Eigen::Index lead = 0;
      for (Eigen::Index i = 1; i < n; ++i)
        if (std::abs(v(i)) > std::abs(v(lead))) lead = i;
      sign = v(lead) >= 0.0 ? 1.0 : -1.0;
    }
    out.weights.a = sign > 0.0 ? std::move(pos) : std::move(neg);
  }
  if (out.weights.a.size() == 0 || !(out.weights.a.norm() > 0.0))
    return solve_l1(r);  // clamp collapsed; fall back to the basis-vector solution
  return out;
}

Herm2 combine(const CsdSet& csd, const WeightVector& weights) {
  if (static_cast<std::size_t>(weights.a.size()) != csd.size())
    throw AlignmentError("combine: weights/bins length mismatch");
  Herm2 out;
  for (std::size_t i = 0; i < csd.size(); ++i) {
    const double w = weights.a(static_cast<Eigen::Index>(i));
    out.q += w * csd.bins[i].q;
    out.s += w * csd.bins[i].s;
    out.r += w * csd.bins[i].r;
  }
  return out;
}

DoaEstimate estimate_doa(const CsdSet& csd, StandardizationScheme scheme,
                         NormKind norm_kind) {
  const StandardizedCsd std_csd = standardize(csd, scheme);
  const RMatrix r = build_r(std_csd.csd);
  const SolveResult sol = norm_kind == NormKind::L1 ? solve_l1(r) : solve_l2(r);
  const Herm2 combined = combine(std_csd.csd, sol.weights);
  return assemble_estimate(combined, sol.weights, sol.degenerate, scheme, norm_kind);
}

PropositionBound proposition_bound(double p_s, const Herm2& sigma,
                                   const Eigen::Vector2d& u) {
  if (!(p_s > 0.0)) throw InvalidSpecError("proposition_bound: P_S must be positive");
  if (std::abs(u.norm() - 1.0) > 1e-9)
    throw InvalidSpecError("proposition_bound: u must be a unit vector");

  const double lmin = lambda_min(sigma);
  const double lmax = lambda_max(sigma);
  const double fro = std::hypot(lmin, lmax);

  PropositionBound out;
  out.exact_denominator = p_s - 2.0 * fro;
  out.applicable = fro < p_s / 2.0;

  // Relaxed denominator using the condition number of sigma itself;
  // coincides with the exact one up to rounding, and degrades gracefully
  // for singular sigma (limit value lambda_max).
  double relaxed_term = lmax;
  if (lmin > 0.0) relaxed_term = std::hypot(lmin, lmin * (lmax / lmin));
  out.relaxed_denominator = p_s - 2.0 * relaxed_term;

  Herm2 p;
  p.q = p_s * u.x() * u.x() + sigma.q;
  p.s = p_s * u.y() * u.y() + sigma.s;
  p.r = cplx{p_s * u.x() * u.y(), 0.0} + sigma.r;
  const Eig2 e = eig2(p);

  // Optimal global phase: the complex rotation maximizing Re<u, e^{ip} v>.
  cplx vx = e.vmax_x, vy = e.vmax_y;
  const cplx beta = u.x() * vx + u.y() * vy;
  if (std::abs(beta) > 0.0) {
    const cplx rot = std::conj(beta) / std::abs(beta);
    vx *= rot;
    vy *= rot;
  }
  out.lhs = std::sqrt(std::norm(vx - cplx{u.x(), 0.0}) + std::norm(vy - cplx{u.y(), 0.0}));

  const double uperp_x = -u.y(), uperp_y = u.x();
  const cplx p_tilde = u.x() * (sigma.q * uperp_x + sigma.r * uperp_y) +
                       u.y() * (std::conj(sigma.r) * uperp_x + sigma.s * uperp_y);
  out.rhs = out.applicable ? 2.0 * std::abs(p_tilde) / out.exact_denominator
                           : std::numeric_limits<double>::quiet_NaN();
  return out;
}

std::string to_string(StandardizationScheme scheme) {
  switch (scheme) {
    case StandardizationScheme::Trace:
      return "trace";
    case StandardizationScheme::MinEig:
      return "mineig";
    case StandardizationScheme::None:
      return "none";
  }
  return "none";
}

std::string to_string(NormKind norm) { return norm == NormKind::L1 ? "l1" : "l2"; }

StandardizationScheme scheme_from_string(const std::string& name) {
  if (name == "trace") return StandardizationScheme::Trace;
  if (name == "mineig") return StandardizationScheme::MinEig;
  if (name == "none") return StandardizationScheme::None;
  throw InvalidSpecError("unknown standardization scheme: " + name);
}

NormKind norm_from_string(const std::string& name) {
  if (name == "l1") return NormKind::L1;
  if (name == "l2") return NormKind::L2;
  throw InvalidSpecError("unknown norm kind: " + name);
}

std::string to_json(const DoaEstimate& estimate) {
  nlohmann::json j;
  j["azimuth_deg"] = estimate.azimuth_deg;
  j["eigengap"] = estimate.eigengap;
  j["norm_kind"] = to_string(estimate.norm_kind);
  j["scheme"] = to_string(estimate.scheme);
  j["degenerate"] = estimate.degenerate;
  nlohmann::json weights = nlohmann::json::array();
  for (Eigen::Index i = 0; i < estimate.weights.a.size(); ++i)
    weights.push_back(estimate.weights.a(i));
  j["weights"] = std::move(weights);
  return j.dump();
}

}  // namespace vsdoa
