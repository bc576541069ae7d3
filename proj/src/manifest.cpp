// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include "dynaprune/manifest.hpp"

#include <cmath>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "dynaprune/error.hpp"
#include "dynaprune/rng.hpp"
#include "dynaprune/synthetic.hpp"
#include "dynaprune/wav.hpp"

namespace dynaprune {
namespace {

using nlohmann::json;

ManifestEntry parse_entry(const json& j, std::size_t line_no) {
  const auto fail = [line_no](const std::string& what) -> ParseError {
    return ParseError("manifest line " + std::to_string(line_no) + ": " + what);
  };
  if (!j.is_object()) throw fail("expected a JSON object");
  ManifestEntry entry;
  if (!j.contains("id") || !j.at("id").is_string()) {
    throw fail("missing string field \"id\"");
  }
  entry.id = j.at("id").get<std::string>();
  if (!j.contains("labels") || !j.at("labels").is_array()) {
    throw fail("missing array field \"labels\"");
  }
  for (const auto& v : j.at("labels")) {
    if (!v.is_number_integer()) throw fail("labels must be integers");
    entry.labels.push_back(v.get<int>());
  }
  if (!j.contains("duration_s") || !j.at("duration_s").is_number()) {
    throw fail("missing numeric field \"duration_s\"");
  }
  entry.duration_s = j.at("duration_s").get<double>();
  if (!(entry.duration_s > 0.0)) throw fail("duration_s must be positive");

  const bool has_wav = j.contains("wav");
  const bool has_synth = j.contains("synthetic");
  if (has_wav == has_synth) {
    throw fail("expected exactly one of \"wav\" or \"synthetic\"");
  }
  if (has_wav) {
    if (!j.at("wav").is_string()) throw fail("\"wav\" must be a path string");
    entry.wav_path = j.at("wav").get<std::string>();
  } else {
    const json& s = j.at("synthetic");
    if (!s.is_object()) throw fail("\"synthetic\" must be an object");
    EntrySynthetic synth;
    synth.noise_sigma = s.value("noise_sigma", 0.0);
    synth.sample_rate = s.value("sample_rate", 16000);
    synth.seed = s.value("seed", std::uint64_t{0});
    synth.amplitude = s.value("amplitude", 0.35);
    synth.base_freq_hz = s.value("base_freq_hz", 250.0);
    if (synth.noise_sigma < 0.0) throw fail("noise_sigma must be >= 0");
    if (synth.sample_rate <= 0) throw fail("sample_rate must be positive");
    entry.synthetic = synth;
  }
  return entry;
}

json entry_to_json(const ManifestEntry& e) {
  json j;
  j["id"] = e.id;
  if (e.wav_path) {
    j["wav"] = *e.wav_path;
  } else if (e.synthetic) {
    j["synthetic"] = {{"noise_sigma", e.synthetic->noise_sigma},
                      {"sample_rate", e.synthetic->sample_rate},
                      {"seed", e.synthetic->seed},
                      {"amplitude", e.synthetic->amplitude},
                      {"base_freq_hz", e.synthetic->base_freq_hz}};
  }
  j["labels"] = e.labels;
  j["duration_s"] = e.duration_s;
  return j;
}

}  // namespace

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  Manifest manifest;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError("manifest line " + std::to_string(line_no) + ": " +
                       e.what());
    }
    ManifestEntry entry = parse_entry(j, line_no);
    if (!seen.insert(entry.id).second) {
      throw ValidationError("manifest: duplicate id '" + entry.id + "' at line " +
                            std::to_string(line_no));
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write manifest " + path.string());
  for (const ManifestEntry& e : manifest.entries) {
    out << entry_to_json(e).dump() << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<AudioInstance> load_instances(const Manifest& manifest,
                                          const std::filesystem::path& base_dir,
                                          std::size_t frame_len) {
  std::vector<AudioInstance> out;
  out.reserve(manifest.entries.size());
  for (const ManifestEntry& e : manifest.entries) {
    if (e.wav_path) {
      WavData wav = read_wav(base_dir / *e.wav_path);
      out.push_back(AudioInstance::make(e.id, std::move(wav.samples),
                                        wav.sample_rate, e.labels, frame_len));
    } else {
      const EntrySynthetic& s = *e.synthetic;
      Rng rng = Rng::derive(s.seed, {Rng::hash_str("entry"), Rng::hash_str(e.id)});
      std::vector<float> samples =
          render_frames(e.labels, frame_len, s.sample_rate, s.amplitude,
                        s.base_freq_hz, s.noise_sigma, rng);
      out.push_back(AudioInstance::make(e.id, std::move(samples), s.sample_rate,
                                        e.labels, frame_len));
    }
    const AudioInstance& inst = out.back();
    if (std::abs(inst.duration_s - e.duration_s) > 1e-6) {
      throw ValidationError("manifest entry '" + e.id + "': duration_s " +
                            std::to_string(e.duration_s) +
                            " does not match audio (" +
                            std::to_string(inst.duration_s) + ")");
    }
  }
  return out;
}

}  // namespace dynaprune
