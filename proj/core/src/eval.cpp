// SPDX-License-Identifier: Apache-2.0
#include "vsdoa/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include <nlohmann/json.hpp>

#include "vsdoa/errors.hpp"
#include "vsdoa/wav_io.hpp"

namespace vsdoa {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

double angular_error(double est_deg, double truth_deg) {
  const auto reduce = [](double deg) {
    double r = std::fmod(deg, 180.0);
    if (r < 0.0) r += 180.0;
    return r;
  };
  const double d = std::abs(reduce(est_deg) - reduce(truth_deg));
  return std::min(d, 180.0 - d);
}

double maad(const std::vector<double>& errors_deg) {
  if (errors_deg.empty()) throw EmptyInputError("maad: empty error list");
  double sum = 0.0;
  for (double e : errors_deg) sum += e;
  return sum / static_cast<double>(errors_deg.size());
}

ObservationManifest load_manifest(const std::filesystem::path& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw DataError("cannot open manifest: " + csv_path.string());
  const std::filesystem::path base = csv_path.parent_path();

  ObservationManifest manifest;
  std::set<std::string> seen_ids;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("id,", 0) == 0) continue;  // header row
    }
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() < 3)
      throw DataError("manifest row needs id,path,true_azimuth_deg[,range_km]: " + line);
    Observation obs;
    obs.id = trim(fields[0]);
    if (obs.id.empty()) throw DataError("manifest row with empty id: " + line);
    if (!seen_ids.insert(obs.id).second)
      throw DataError("duplicate observation id: " + obs.id);
    std::filesystem::path p = trim(fields[1]);
    obs.path = p.is_absolute() ? p : base / p;
    try {
      obs.true_azimuth_deg = std::stod(trim(fields[2]));
    } catch (const std::exception&) {
      throw DataError("bad azimuth in manifest row: " + line);
    }
    if (!(obs.true_azimuth_deg >= 0.0 && obs.true_azimuth_deg < 360.0))
      throw DataError("azimuth outside [0, 360) in row: " + obs.id);
    if (fields.size() >= 4 && !trim(fields[3]).empty()) {
      try {
        obs.range_km = std::stod(trim(fields[3]));
      } catch (const std::exception&) {
        throw DataError("bad range in manifest row: " + line);
      }
      if (!(*obs.range_km > 0.0)) throw DataError("range must be positive in row: " + obs.id);
    }
    manifest.rows.push_back(std::move(obs));
  }
  return manifest;
}

void save_manifest(const std::filesystem::path& csv_path, const ObservationManifest& m) {
  std::ofstream out(csv_path);
  if (!out) throw DataError("cannot open for writing: " + csv_path.string());
  out << "id,path,true_azimuth_deg,range_km\n";
  for (const Observation& obs : m.rows) {
    out << obs.id << ',' << obs.path.string() << ',';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", obs.true_azimuth_deg);
    out << buf << ',';
    if (obs.range_km) {
      std::snprintf(buf, sizeof buf, "%.10g", *obs.range_km);
      out << buf;
    }
    out << '\n';
  }
}

std::string MethodConfig::name() const {
  switch (kind) {
    case Kind::Covariance:
      return "covariance";
    case Kind::Uniform:
      return "uniform-" + to_string(scheme);
    case Kind::Eigengap:
      return "eigengap-" + to_string(norm_kind) + "-" + to_string(scheme);
  }
  return "unknown";
}

std::vector<MethodConfig> default_method_set(double band_lo_hz, double band_hi_hz) {
  std::vector<MethodConfig> methods;
  const auto with_band = [&](MethodConfig m) {
    m.band_lo_hz = band_lo_hz;
    m.band_hi_hz = band_hi_hz;
    return m;
  };
  MethodConfig m;
  m.kind = MethodConfig::Kind::Eigengap;
  m.norm_kind = NormKind::L1;
  m.scheme = StandardizationScheme::Trace;
  methods.push_back(with_band(m));
  m.norm_kind = NormKind::L2;
  m.scheme = StandardizationScheme::MinEig;
  methods.push_back(with_band(m));
  m.scheme = StandardizationScheme::None;
  methods.push_back(with_band(m));
  m.kind = MethodConfig::Kind::Covariance;
  methods.push_back(with_band(m));
  m.kind = MethodConfig::Kind::Uniform;
  m.scheme = StandardizationScheme::None;
  methods.push_back(with_band(m));
  return methods;
}

EvalReport evaluate(const ObservationManifest& manifest,
                    const std::vector<MethodConfig>& methods,
                    const EvalOptions& options) {
  if (manifest.rows.empty()) throw EmptyInputError("evaluate: empty manifest");
  if (methods.empty()) throw EmptyInputError("evaluate: no methods configured");

  // Deterministic ordered reduction: observations sorted by id.
  std::vector<const Observation*> ordered;
  ordered.reserve(manifest.rows.size());
  for (const Observation& obs : manifest.rows) ordered.push_back(&obs);
  std::sort(ordered.begin(), ordered.end(),
            [](const Observation* a, const Observation* b) { return a->id < b->id; });

  EvalReport report;
  report.methods.resize(methods.size());
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    report.methods[mi].method = methods[mi].name();
    report.methods[mi].hist_bin_width_deg = options.hist_bin_width_deg;
    report.methods[mi].range_edges_km = options.range_edges_km;
  }

  std::size_t successes = 0;
  for (const Observation* obs : ordered) {
    MultiChannelRecord record;
    bool readable = true;
    std::string read_error;
    try {
      record = read_wav(obs->path);
    } catch (const std::exception& e) {
      readable = false;
      read_error = e.what();
    }

    // Welch output is shared between methods with the same spectral
    // config; keyed by (segment_length, overlap, window).
    std::map<std::tuple<std::size_t, double, int>, CsdSet> csd_cache;

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      MethodReport& mr = report.methods[mi];
      if (!readable) {
        mr.row_errors.push_back({obs->id, read_error});
        continue;
      }
      const MethodConfig& cfg = methods[mi];
      try {
        DoaEstimate est;
        if (cfg.kind == MethodConfig::Kind::Covariance) {
          est = covariance_doa(record, cfg.band_lo_hz, cfg.band_hi_hz);
        } else {
          const auto key = std::make_tuple(cfg.spectral.segment_length, cfg.spectral.overlap,
                                           static_cast<int>(cfg.spectral.window));
          auto it = csd_cache.find(key);
          if (it == csd_cache.end())
            it = csd_cache.emplace(key, welch_csd(record, cfg.spectral)).first;
          const CsdSet in_band = select_band(it->second, cfg.band_lo_hz, cfg.band_hi_hz);
          est = cfg.kind == MethodConfig::Kind::Uniform
                    ? uniform_weight_doa(in_band, cfg.scheme)
                    : estimate_doa(in_band, cfg.scheme, cfg.norm_kind);
        }
        RowResult row;
        row.id = obs->id;
        row.true_azimuth_deg = obs->true_azimuth_deg;
        row.azimuth_deg = est.azimuth_deg;
        row.abs_error_deg = angular_error(est.azimuth_deg, obs->true_azimuth_deg);
        row.range_km = obs->range_km;
        row.degenerate = est.degenerate;
        mr.rows.push_back(std::move(row));
        ++successes;
      } catch (const std::exception& e) {
        mr.row_errors.push_back({obs->id, e.what()});
      }
    }
  }
  if (successes == 0) throw DataError("evaluate: every observation failed for every method");

  for (MethodReport& mr : report.methods) {
    mr.n_observations = mr.rows.size();
    mr.n_degenerate = 0;
    std::vector<double> errors;
    errors.reserve(mr.rows.size());
    for (const RowResult& row : mr.rows) {
      errors.push_back(row.abs_error_deg);
      if (row.degenerate) ++mr.n_degenerate;
    }
    mr.maad_deg = errors.empty() ? std::numeric_limits<double>::quiet_NaN() : maad(errors);

    // Cumulative range bins: every observation with range <= edge.
    mr.range_maad_deg.assign(mr.range_edges_km.size(),
                             std::numeric_limits<double>::quiet_NaN());
    mr.range_counts.assign(mr.range_edges_km.size(), 0);
    for (std::size_t e = 0; e < mr.range_edges_km.size(); ++e) {
      double sum = 0.0;
      std::size_t count = 0;
      for (const RowResult& row : mr.rows) {
        if (row.range_km && *row.range_km <= mr.range_edges_km[e]) {
          sum += row.abs_error_deg;
          ++count;
        }
      }
      mr.range_counts[e] = count;
      if (count > 0) mr.range_maad_deg[e] = sum / static_cast<double>(count);
    }

    const auto n_hist_bins =
        static_cast<std::size_t>(std::ceil(90.0 / mr.hist_bin_width_deg));
    mr.hist_counts.assign(n_hist_bins, 0);
    for (const RowResult& row : mr.rows) {
      auto idx = static_cast<std::size_t>(row.abs_error_deg / mr.hist_bin_width_deg);
      if (idx >= n_hist_bins) idx = n_hist_bins - 1;  // err == 90 lands in the top bin
      ++mr.hist_counts[idx];
    }
  }
  return report;
}

std::string to_json(const EvalReport& report) {
  nlohmann::json j;
  j["schema_version"] = report.schema_version;
  nlohmann::json methods = nlohmann::json::array();
  for (const MethodReport& mr : report.methods) {
    nlohmann::json m;
    m["method"] = mr.method;
    m["maad_deg"] = mr.maad_deg;
    m["n_observations"] = mr.n_observations;
    m["n_degenerate"] = mr.n_degenerate;
    m["range_edges_km"] = mr.range_edges_km;
    nlohmann::json range_maad = nlohmann::json::array();
    for (double v : mr.range_maad_deg) {
      if (std::isnan(v))
        range_maad.push_back(nullptr);
      else
        range_maad.push_back(v);
    }
    m["range_maad_deg"] = std::move(range_maad);
    m["range_counts"] = mr.range_counts;
    m["hist_bin_width_deg"] = mr.hist_bin_width_deg;
    m["hist_counts"] = mr.hist_counts;
    nlohmann::json errs = nlohmann::json::array();
    for (const RowError& re : mr.row_errors)
      errs.push_back({{"id", re.id}, {"message", re.message}});
    m["row_errors"] = std::move(errs);
    methods.push_back(std::move(m));
  }
  j["methods"] = std::move(methods);
  return j.dump(2);
}

void write_report_json(const std::filesystem::path& path, const EvalReport& report) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path.string());
  out << to_json(report) << '\n';
}

void write_report_csv(const std::filesystem::path& path, const EvalReport& report) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path.string());
  out << "method,id,true_azimuth_deg,azimuth_deg,abs_error_deg,range_km,degenerate\n";
  char buf[64];
  for (const MethodReport& mr : report.methods) {
    for (const RowResult& row : mr.rows) {
      out << mr.method << ',' << row.id << ',';
      std::snprintf(buf, sizeof buf, "%.10g", row.true_azimuth_deg);
      out << buf << ',';
      std::snprintf(buf, sizeof buf, "%.17g", row.azimuth_deg);
      out << buf << ',';
      std::snprintf(buf, sizeof buf, "%.17g", row.abs_error_deg);
      out << buf << ',';
      if (row.range_km) {
        std::snprintf(buf, sizeof buf, "%.10g", *row.range_km);
        out << buf;
      }
      out << ',' << (row.degenerate ? 1 : 0) << '\n';
    }
  }
}

}  // namespace vsdoa
