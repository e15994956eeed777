// lfsp/config_json.hpp -- JSON (de)serialization of ExperimentConfig.
//
// Copyright 2026 lfsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef LFSP_CONFIG_JSON_HPP_
#define LFSP_CONFIG_JSON_HPP_

#include <fstream>
#include <string>

#include <json.hpp>

#include "lfsp/common.hpp"
#include "lfsp/pipeline.hpp"

namespace lfsp {

namespace detail {

template <typename T>
inline void maybe(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

inline void parse_corpus(const nlohmann::json& j, CorpusSpec& spec) {
  maybe(j, "count", spec.count);
  maybe(j, "seconds", spec.seconds);
  maybe(j, "seed", spec.seed);
  maybe(j, "sample_rate", spec.sample_rate);
  maybe(j, "harmonics_min", spec.harmonics_min);
  maybe(j, "harmonics_max", spec.harmonics_max);
  maybe(j, "f0_min", spec.f0_min);
  maybe(j, "f0_max", spec.f0_max);
  maybe(j, "chirp", spec.chirp);
  maybe(j, "noise_db", spec.noise_db);
}

}  // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  if (j.contains("stft")) {
    const auto& s = j.at("stft");
    detail::maybe(s, "sample_rate", cfg.stft.sample_rate);
    detail::maybe(s, "frame_length", cfg.stft.frame_length);
    detail::maybe(s, "frame_shift", cfg.stft.frame_shift);
    detail::maybe(s, "fft_size", cfg.stft.fft_size);
    if (s.contains("window")) {
      const std::string w = s.at("window").get<std::string>();
      check_arg(w == "hann_periodic", "config: unknown window kind");
      cfg.stft.window_kind = WindowKind::kHannPeriodic;
    }
  }
  if (j.contains("interp")) {
    const auto& s = j.at("interp");
    detail::maybe(s, "ratio", cfg.interp.ratio);
    detail::maybe(s, "half_width", cfg.interp.half_width);
  }
  if (j.contains("model")) {
    const auto& s = j.at("model");
    detail::maybe(s, "channels", cfg.model.channels);
    detail::maybe(s, "num_blocks", cfg.model.num_blocks);
    detail::maybe(s, "kernel_time", cfg.model.kernel_time);
  }
  if (j.contains("training")) {
    const auto& s = j.at("training");
    detail::maybe(s, "learning_rate", cfg.training.learning_rate);
    detail::maybe(s, "momentum", cfg.training.momentum);
    detail::maybe(s, "steps", cfg.training.steps);
    detail::maybe(s, "seed", cfg.training.seed);
    if (s.contains("loss_weights")) {
      const auto& w = s.at("loss_weights");
      detail::maybe(w, "ip", cfg.loss_weights.w_ip);
      detail::maybe(w, "gd", cfg.loss_weights.w_gd);
      detail::maybe(w, "iaf", cfg.loss_weights.w_iaf);
    }
  }
  if (j.contains("corpus")) detail::parse_corpus(j.at("corpus"), cfg.corpus);
  if (j.contains("eval_corpus")) detail::parse_corpus(j.at("eval_corpus"), cfg.eval_corpus);
  if (j.contains("baseline")) {
    const auto& s = j.at("baseline");
    detail::maybe(s, "iterations", cfg.baseline.iterations);
    detail::maybe(s, "alpha", cfg.baseline.momentum_alpha);
    detail::maybe(s, "beta", cfg.baseline.beta);
  }
  if (j.contains("paths")) {
    const auto& s = j.at("paths");
    detail::maybe(s, "corpus_dir", cfg.paths.corpus_dir);
    detail::maybe(s, "model", cfg.paths.model);
  }
  cfg.model.input_bins = cfg.stft.bins();
  cfg.validate();
  return cfg;
}

inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["stft"] = {{"sample_rate", cfg.stft.sample_rate},
               {"frame_length", cfg.stft.frame_length},
               {"frame_shift", cfg.stft.frame_shift},
               {"fft_size", cfg.stft.fft_size},
               {"window", "hann_periodic"}};
  j["interp"] = {{"ratio", cfg.interp.ratio}, {"half_width", cfg.interp.half_width}};
  j["model"] = {{"channels", cfg.model.channels},
                {"num_blocks", cfg.model.num_blocks},
                {"kernel_time", cfg.model.kernel_time}};
  j["training"] = {{"learning_rate", cfg.training.learning_rate},
                   {"momentum", cfg.training.momentum},
                   {"steps", cfg.training.steps},
                   {"seed", cfg.training.seed},
                   {"loss_weights",
                    {{"ip", cfg.loss_weights.w_ip},
                     {"gd", cfg.loss_weights.w_gd},
                     {"iaf", cfg.loss_weights.w_iaf}}}};
  auto corpus_json = [](const CorpusSpec& c) {
    return nlohmann::json{{"count", c.count},
                          {"seconds", c.seconds},
                          {"seed", c.seed},
                          {"sample_rate", c.sample_rate},
                          {"harmonics_min", c.harmonics_min},
                          {"harmonics_max", c.harmonics_max},
                          {"f0_min", c.f0_min},
                          {"f0_max", c.f0_max},
                          {"chirp", c.chirp},
                          {"noise_db", c.noise_db}};
  };
  j["corpus"] = corpus_json(cfg.corpus);
  j["eval_corpus"] = corpus_json(cfg.eval_corpus);
  j["baseline"] = {{"iterations", cfg.baseline.iterations},
                   {"alpha", cfg.baseline.momentum_alpha},
                   {"beta", cfg.baseline.beta}};
  j["paths"] = {{"corpus_dir", cfg.paths.corpus_dir}, {"model", cfg.paths.model}};
  return j;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(FormatError::Kind::kBadHeader,
                             "load_config: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return config_from_json(j);
}

}  // namespace lfsp

#endif  // LFSP_CONFIG_JSON_HPP_
