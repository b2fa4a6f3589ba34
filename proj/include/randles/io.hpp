#pragma once

#include <string>

#include "json.hpp"

#include "randles/montecarlo.hpp"

namespace randles {

/// Formats a double with 17 significant digits (lossless round trip).
std::string format_double(double value);

/// CSV persistence, comma separated with a header row and LF line endings.
void write_csv_tu(const std::string& path, const TimeSeries& u);
void write_csv_tuy(const std::string& path, const TimeSeries& u, const TimeSeries& y);

nlohmann::ordered_json to_json(const CircuitParams& params);
nlohmann::ordered_json to_json(const RationalTF& tf);
nlohmann::ordered_json to_json(const ExcitationReport& report);
nlohmann::ordered_json to_json(const TrialResult& trial);
nlohmann::ordered_json to_json(const StudyStats& stats, const CircuitParams& truth);

CircuitParams circuit_params_from_json(const nlohmann::ordered_json& j);
RationalTF rational_tf_from_json(const nlohmann::ordered_json& j);
MultiSineSpec multisine_from_json(const nlohmann::ordered_json& j);

/// Parses a full study configuration document. The master seed (config key
/// "seed", overridable by the caller) derives the noise seed (= master) and
/// the fit init seed (= master + 1000000).
StudyConfig study_config_from_json(const nlohmann::ordered_json& j,
                                   std::optional<std::uint64_t> seed_override);

nlohmann::ordered_json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::ordered_json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace randles
