// SPDX-License-Identifier: Apache-2.0
//
// vsdoa command-line front end.
//
//   vsdoa synth    --config scenario.json --out DIR [--seed N]
//   vsdoa estimate RECORDING.wav [--band LO:HI --method M --scheme S --norm N]
//   vsdoa evaluate MANIFEST.csv [--config methods.json --out DIR --band LO:HI]
//   vsdoa sweep    --config sweep.json --out DIR
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vsdoa/baselines.hpp"
#include "vsdoa/eigengap.hpp"
#include "vsdoa/errors.hpp"
#include "vsdoa/eval.hpp"
#include "vsdoa/signal_model.hpp"
#include "vsdoa/spectral.hpp"
#include "vsdoa/wav_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw vsdoa::DataError("cannot open config: " + path.string());
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw vsdoa::DataError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

std::pair<double, double> parse_band(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("--band", "expected LO:HI, got '" + text + "'");
  try {
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--band", "expected numeric LO:HI, got '" + text + "'");
  }
}

vsdoa::SourceSpec source_from_json(const json& j, double azimuth_deg) {
  vsdoa::SourceSpec source;
  source.azimuth_deg = azimuth_deg;
  const std::string type = j.at("type").get<std::string>();
  if (type == "tones") {
    vsdoa::ToneSet tones;
    for (const auto& t : j.at("tones")) {
      vsdoa::Tone tone;
      tone.freq_hz = t.at("freq_hz").get<double>();
      tone.amplitude = t.at("amplitude").get<double>();
      tone.phase_rad = t.value("phase_rad", 0.0);
      tones.tones.push_back(tone);
    }
    source.waveform = std::move(tones);
  } else if (type == "band_noise") {
    vsdoa::BandNoise band;
    band.f_lo_hz = j.at("f_lo_hz").get<double>();
    band.f_hi_hz = j.at("f_hi_hz").get<double>();
    band.power = j.at("power").get<double>();
    source.waveform = band;
  } else {
    throw vsdoa::DataError("unknown source type: " + type);
  }
  return source;
}

vsdoa::NoiseSpec noise_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "isotropic") return vsdoa::isotropic_noise(j.at("variance").get<double>());
  if (type != "anisotropic") throw vsdoa::DataError("unknown noise type: " + type);
  vsdoa::AnisotropicNoise aniso;
  for (const auto& b : j.at("bands")) {
    vsdoa::AnisotropicBand band;
    band.f_lo_hz = b.at("f_lo_hz").get<double>();
    band.f_hi_hz = b.at("f_hi_hz").get<double>();
    band.psd.q = b.at("xx").get<double>();
    band.psd.s = b.at("yy").get<double>();
    band.psd.r = vsdoa::cplx{b.value("xy_re", 0.0), b.value("xy_im", 0.0)};
    aniso.bands.push_back(band);
  }
  vsdoa::NoiseSpec spec;
  spec.kind = std::move(aniso);
  if (j.contains("condition_bound") && !j.at("condition_bound").is_null())
    spec.condition_bound = j.at("condition_bound").get<double>();
  return spec;
}

vsdoa::SpectralConfig spectral_from_json(const json& j) {
  vsdoa::SpectralConfig config;
  if (j.is_null()) return config;
  config.segment_length = j.value("segment_length", config.segment_length);
  config.overlap = j.value("overlap", config.overlap);
  const std::string window = j.value("window", std::string("hann"));
  if (window == "hann")
    config.window = vsdoa::Window::Hann;
  else if (window == "hamming")
    config.window = vsdoa::Window::Hamming;
  else if (window == "rectangular")
    config.window = vsdoa::Window::Rectangular;
  else
    throw vsdoa::DataError("unknown window: " + window);
  return config;
}

vsdoa::MethodConfig method_from_json(const json& j, double band_lo, double band_hi,
                                     const vsdoa::SpectralConfig& spectral) {
  vsdoa::MethodConfig cfg;
  cfg.band_lo_hz = band_lo;
  cfg.band_hi_hz = band_hi;
  cfg.spectral = spectral;
  const std::string method = j.at("method").get<std::string>();
  if (method == "eigengap") {
    cfg.kind = vsdoa::MethodConfig::Kind::Eigengap;
    cfg.norm_kind = vsdoa::norm_from_string(j.value("norm", std::string("l2")));
    cfg.scheme = vsdoa::scheme_from_string(j.value("scheme", std::string("none")));
  } else if (method == "covariance") {
    cfg.kind = vsdoa::MethodConfig::Kind::Covariance;
  } else if (method == "uniform") {
    cfg.kind = vsdoa::MethodConfig::Kind::Uniform;
    cfg.scheme = vsdoa::scheme_from_string(j.value("scheme", std::string("none")));
  } else {
    throw vsdoa::DataError("unknown method: " + method);
  }
  return cfg;
}

std::vector<vsdoa::MethodConfig> methods_from_config(const json& j) {
  double band_lo = 75.0, band_hi = 300.0;
  if (j.contains("band")) {
    band_lo = j.at("band").at(0).get<double>();
    band_hi = j.at("band").at(1).get<double>();
  }
  const vsdoa::SpectralConfig spectral =
      spectral_from_json(j.contains("spectral") ? j.at("spectral") : json());
  std::vector<vsdoa::MethodConfig> methods;
  if (!j.contains("methods")) return vsdoa::default_method_set(band_lo, band_hi);
  for (const auto& m : j.at("methods"))
    methods.push_back(method_from_json(m, band_lo, band_hi, spectral));
  return methods;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed_override;
};

void run_synth(const SynthArgs& args) {
  const json cfg = load_json(args.config_path);
  const auto n_obs = cfg.at("n_observations").get<std::size_t>();
  const double duration_s = cfg.at("duration_s").get<double>();
  const double sample_rate = cfg.value("sample_rate_hz", 8192.0);
  std::uint64_t seed = cfg.value("seed", 0ULL);
  if (args.seed_override) seed = *args.seed_override;

  std::vector<double> azimuths;
  for (const auto& a : cfg.at("azimuths_deg")) azimuths.push_back(a.get<double>());
  if (azimuths.empty()) throw vsdoa::DataError("azimuths_deg must be nonempty");
  std::vector<double> ranges;
  if (cfg.contains("ranges_km"))
    for (const auto& r : cfg.at("ranges_km")) ranges.push_back(r.get<double>());

  const vsdoa::NoiseSpec noise = noise_from_json(cfg.at("noise"));
  const fs::path out_dir(args.out_dir);
  fs::create_directories(out_dir);

  vsdoa::ObservationManifest manifest;
  for (std::size_t i = 0; i < n_obs; ++i) {
    const double azimuth = azimuths[i % azimuths.size()];
    const vsdoa::SourceSpec source = source_from_json(cfg.at("source"), azimuth);
    const std::uint64_t obs_seed = seed + i;
    const vsdoa::MultiChannelRecord record =
        vsdoa::synth_plane_wave(source, noise, duration_s, sample_rate, obs_seed);

    char id[16];
    std::snprintf(id, sizeof id, "%04zu", i);
    const fs::path wav_path = out_dir / (std::string("obs_") + id + ".wav");
    vsdoa::write_wav(wav_path, record);
    vsdoa::RecordingMeta meta;
    meta.azimuth_deg = azimuth;
    meta.sample_rate_hz = sample_rate;
    meta.seed = obs_seed;
    meta.spec_echo = cfg.dump();
    vsdoa::write_sidecar(vsdoa::sidecar_path(wav_path), meta);

    vsdoa::Observation obs;
    obs.id = id;
    obs.path = wav_path.filename();
    obs.true_azimuth_deg = azimuth;
    if (!ranges.empty()) obs.range_km = ranges[i % ranges.size()];
    manifest.rows.push_back(std::move(obs));
  }
  vsdoa::save_manifest(out_dir / "manifest.csv", manifest);
  std::cout << "wrote " << n_obs << " recordings and manifest.csv to " << out_dir.string()
            << '\n';
}

// ------------------------------------------------------------- estimate

struct EstimateArgs {
  std::string wav_path;
  std::string band = "75:300";
  std::string method = "eigengap";
  std::string scheme = "none";
  std::string norm = "l2";
  std::size_t segment_length = 4096;
  double overlap = 0.5;
};

void run_estimate(const EstimateArgs& args) {
  const auto [band_lo, band_hi] = parse_band(args.band);
  const vsdoa::MultiChannelRecord record = vsdoa::read_wav(args.wav_path);

  vsdoa::DoaEstimate estimate;
  if (args.method == "covariance") {
    estimate = vsdoa::covariance_doa(record, band_lo, band_hi);
  } else {
    vsdoa::SpectralConfig spectral;
    spectral.segment_length = args.segment_length;
    spectral.overlap = args.overlap;
    const vsdoa::CsdSet csd =
        vsdoa::select_band(vsdoa::welch_csd(record, spectral), band_lo, band_hi);
    const auto scheme = vsdoa::scheme_from_string(args.scheme);
    if (args.method == "uniform")
      estimate = vsdoa::uniform_weight_doa(csd, scheme);
    else if (args.method == "eigengap")
      estimate = vsdoa::estimate_doa(csd, scheme, vsdoa::norm_from_string(args.norm));
    else
      throw vsdoa::DataError("unknown method: " + args.method);
  }
  std::cout << vsdoa::to_json(estimate) << '\n';
}

// ------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string manifest_path;
  std::string config_path;
  std::string out_dir = ".";
  std::string band;
};

void run_evaluate(const EvaluateArgs& args) {
  const vsdoa::ObservationManifest manifest = vsdoa::load_manifest(args.manifest_path);

  std::vector<vsdoa::MethodConfig> methods;
  if (!args.config_path.empty()) {
    methods = methods_from_config(load_json(args.config_path));
  } else if (!args.band.empty()) {
    const auto [lo, hi] = parse_band(args.band);
    methods = vsdoa::default_method_set(lo, hi);
  } else {
    methods = vsdoa::default_method_set();
  }

  const vsdoa::EvalReport report = vsdoa::evaluate(manifest, methods);
  const fs::path out_dir(args.out_dir);
  fs::create_directories(out_dir);
  vsdoa::write_report_json(out_dir / "report.json", report);
  vsdoa::write_report_csv(out_dir / "report.csv", report);
  for (const auto& mr : report.methods)
    std::cout << mr.method << ": maad_deg=" << mr.maad_deg
              << " n=" << mr.n_observations << " degenerate=" << mr.n_degenerate << '\n';
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string config_path;
  std::string out_dir = ".";
};

void run_sweep(const SweepArgs& args) {
  const json cfg = load_json(args.config_path);
  const std::string sweep_kind = cfg.at("sweep").get<std::string>();
  if (sweep_kind != "snr" && sweep_kind != "range")
    throw vsdoa::DataError("sweep must be 'snr' or 'range'");
  std::vector<double> values;
  for (const auto& v : cfg.at("values")) values.push_back(v.get<double>());
  const auto n_seeds = cfg.value("seeds", std::size_t{5});
  const std::uint64_t base_seed = cfg.value("seed", 0ULL);
  const double azimuth = cfg.value("azimuth_deg", 60.0);
  const double duration_s = cfg.value("duration_s", 2.0);
  const double sample_rate = cfg.value("sample_rate_hz", 8192.0);
  double band_lo = 75.0, band_hi = 300.0;
  if (cfg.contains("band")) {
    band_lo = cfg.at("band").at(0).get<double>();
    band_hi = cfg.at("band").at(1).get<double>();
  }
  const double snr_db_at_1km = cfg.value("snr_db_at_1km", 30.0);
  const std::vector<vsdoa::MethodConfig> methods = methods_from_config(cfg);

  const fs::path out_dir(args.out_dir);
  fs::create_directories(out_dir);
  std::ofstream csv(out_dir / "sweep.csv");
  if (!csv) throw vsdoa::DataError("cannot open sweep.csv for writing");
  csv << "sweep,value,method,seed,true_azimuth_deg,azimuth_deg,abs_error_deg,degenerate\n";

  const double noise_variance = 1.0;
  // One-sided per-channel noise density for unit variance.
  const double noise_psd = 2.0 * noise_variance / sample_rate;

  for (double value : values) {
    // Per-bin source density: SNR relative to the isotropic noise floor.
    const double snr_db = sweep_kind == "snr"
                              ? value
                              : snr_db_at_1km - 20.0 * std::log10(std::max(value, 1e-9));
    const double source_psd = std::pow(10.0, snr_db / 10.0) * noise_psd;
    vsdoa::SourceSpec source;
    source.azimuth_deg = azimuth;
    source.waveform = vsdoa::BandNoise{band_lo, band_hi, source_psd * (band_hi - band_lo)};
    const vsdoa::NoiseSpec noise = vsdoa::isotropic_noise(noise_variance);

    for (std::size_t seed_idx = 0; seed_idx < n_seeds; ++seed_idx) {
      const std::uint64_t seed = base_seed + seed_idx;
      const vsdoa::MultiChannelRecord record =
          vsdoa::synth_plane_wave(source, noise, duration_s, sample_rate, seed);
      for (const vsdoa::MethodConfig& m : methods) {
        vsdoa::DoaEstimate est;
        if (m.kind == vsdoa::MethodConfig::Kind::Covariance) {
          est = vsdoa::covariance_doa(record, m.band_lo_hz, m.band_hi_hz);
        } else {
          const vsdoa::CsdSet csd = vsdoa::select_band(
              vsdoa::welch_csd(record, m.spectral), m.band_lo_hz, m.band_hi_hz);
          est = m.kind == vsdoa::MethodConfig::Kind::Uniform
                    ? vsdoa::uniform_weight_doa(csd, m.scheme)
                    : vsdoa::estimate_doa(csd, m.scheme, m.norm_kind);
        }
        char line[256];
        std::snprintf(line, sizeof line, "%s,%.10g,%s,%llu,%.10g,%.17g,%.17g,%d\n",
                      sweep_kind.c_str(), value, m.name().c_str(),
                      static_cast<unsigned long long>(seed), azimuth, est.azimuth_deg,
                      vsdoa::angular_error(est.azimuth_deg, azimuth), est.degenerate ? 1 : 0);
        csv << line;
      }
    }
  }
  std::cout << "wrote sweep.csv (" << values.size() * n_seeds * methods.size()
            << " rows) to " << out_dir.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wideband vector-sensor azimuth estimation"};
  app.require_subcommand(1);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate labeled synthetic recordings");
  synth->add_option("--config", synth_args.config_path, "Scenario config JSON")
      ->required()
      ->check(CLI::ExistingFile);
  synth->add_option("--out", synth_args.out_dir, "Output directory")->required();
  std::uint64_t synth_seed = 0;
  auto* synth_seed_opt = synth->add_option("--seed", synth_seed, "Override scenario seed");

  EstimateArgs est_args;
  auto* estimate = app.add_subcommand("estimate", "Estimate the azimuth of one recording");
  estimate->add_option("recording", est_args.wav_path, "2-channel float WAV")
      ->required()
      ->check(CLI::ExistingFile);
  estimate->add_option("--band", est_args.band, "Analysis band LO:HI in Hz");
  estimate->add_option("--method", est_args.method, "eigengap|covariance|uniform");
  estimate->add_option("--scheme", est_args.scheme, "trace|mineig|none");
  estimate->add_option("--norm", est_args.norm, "l1|l2");
  estimate->add_option("--segment", est_args.segment_length, "Welch segment length");
  estimate->add_option("--overlap", est_args.overlap, "Welch overlap fraction");

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "Batch-evaluate methods on a manifest");
  evaluate->add_option("manifest", eval_args.manifest_path, "Manifest CSV")->required();
  evaluate->add_option("--config", eval_args.config_path, "Methods config JSON")
      ->check(CLI::ExistingFile);
  evaluate->add_option("--out", eval_args.out_dir, "Output directory for reports");
  evaluate->add_option("--band", eval_args.band, "Band LO:HI for the default method set");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "SNR or range sweep to long-format CSV");
  sweep->add_option("--config", sweep_args.config_path, "Sweep config JSON")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_args.out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage error
  }

  try {
    if (synth->parsed()) {
      if (synth_seed_opt->count() > 0) synth_args.seed_override = synth_seed;
      run_synth(synth_args);
    } else if (estimate->parsed()) {
      run_estimate(est_args);
    } else if (evaluate->parsed()) {
      run_evaluate(eval_args);
    } else if (sweep->parsed()) {
      run_sweep(sweep_args);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
