// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vsdoa/baselines.hpp"
#include "vsdoa/eigengap.hpp"
#include "vsdoa/spectral.hpp"

namespace vsdoa {

struct Observation {
  std::string id;
  std::filesystem::path path;
  double true_azimuth_deg = 0.0;  // [0, 360)
  std::optional<double> range_km;
};

struct ObservationManifest {
  std::vector<Observation> rows;
};

/// CSV with header id,path,true_azimuth_deg,range_km; relative recording
/// paths resolve against the manifest's directory.
ObservationManifest load_manifest(const std::filesystem::path& csv_path);
void save_manifest(const std::filesystem::path& csv_path, const ObservationManifest& m);

struct MethodConfig {
  enum class Kind { Eigengap, Covariance, Uniform };
  Kind kind = Kind::Eigengap;
  NormKind norm_kind = NormKind::L2;                          // eigengap only
  StandardizationScheme scheme = StandardizationScheme::None;  // eigengap, uniform
  double band_lo_hz = 75.0;
  double band_hi_hz = 300.0;
  SpectralConfig spectral;

  std::string name() const;  // e.g. "eigengap-l2-none", "covariance"
};

/// Table-style variant set: eigengap 1/Trace, 2/MinEig, 2/None plus the
/// covariance and uniform baselines, all on the same band.
std::vector<MethodConfig> default_method_set(double band_lo_hz = 75.0,
                                             double band_hi_hz = 300.0);

struct RowResult {
  std::string id;
  double true_azimuth_deg = 0.0;
  double azimuth_deg = 0.0;
  double abs_error_deg = 0.0;
  std::optional<double> range_km;
  bool degenerate = false;
};

struct RowError {
  std::string id;
  std::string message;
};

struct MethodReport {
  std::string method;
  double maad_deg = 0.0;
  std::vector<double> range_edges_km;       // cumulative upper bounds
  std::vector<double> range_maad_deg;       // NaN where no rows qualify
  std::vector<std::size_t> range_counts;    // nondecreasing
  double hist_bin_width_deg = 5.0;
  std::vector<std::size_t> hist_counts;     // over [0, 90]
  std::size_t n_observations = 0;
  std::size_t n_degenerate = 0;
  std::vector<RowResult> rows;              // ordered by observation id
  std::vector<RowError> row_errors;
};

struct EvalReport {
  int schema_version = 1;
  std::vector<MethodReport> methods;
};

/// Axial angular distance: both angles reduced mod 180, result in [0, 90].
double angular_error(double est_deg, double truth_deg);

/// Mean absolute angular deviation. Throws EmptyInputError on empty input.
double maad(const std::vector<double>& errors_deg);

struct EvalOptions {
  std::vector<double> range_edges_km = {3.0, 6.0, 9.0, 12.0, 15.0};
  double hist_bin_width_deg = 5.0;
};

/// Run every method over every observation. Per-row failures are
/// recorded and the run continues; if every row fails for every method a
/// DataError is thrown. Deterministic for fixed inputs.
EvalReport evaluate(const ObservationManifest& manifest,
                    const std::vector<MethodConfig>& methods,
                    const EvalOptions& options = {});

std::string to_json(const EvalReport& report);
void write_report_json(const std::filesystem::path& path, const EvalReport& report);
/// Long-format per-row CSV: method,id,true_azimuth_deg,azimuth_deg,
/// abs_error_deg,range_km,degenerate.
void write_report_csv(const std::filesystem::path& path, const EvalReport& report);

}  // namespace vsdoa
