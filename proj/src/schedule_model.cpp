#include "schedule_model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "log_domain.hpp"

namespace rcsp {

ChannelConfig ChannelConfig::from_snr_db(double snr_db) {
  if (!std::isfinite(snr_db)) {
    throw std::invalid_argument("snr_db must be finite");
  }
  return {snr_db, std::pow(10.0, snr_db / 10.0)};
}

ChannelConfig ChannelConfig::from_eta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("linear SNR must be positive and finite");
  }
  return {10.0 * std::log10(eta), eta};
}

double capacity(double eta) {
  if (!(eta > 0.0)) {
    throw std::invalid_argument("capacity requires positive linear SNR");
  }
  return 0.5 * std::log2(1.0 + eta);
}

double capacity_from_snr_db(double snr_db) {
  return capacity(ChannelConfig::from_snr_db(snr_db).eta);
}

MessageSet::MessageSet(int k) : k_bits(k) {
  if (k < 1) {
    throw std::invalid_argument("k_bits must be >= 1, got " + std::to_string(k));
  }
}

TransmissionSchedule::TransmissionSchedule(std::vector<int> increments)
    : increments_(std::move(increments)) {
  if (increments_.empty()) {
    throw std::invalid_argument("schedule needs at least one transmission");
  }
  cumulative_.reserve(increments_.size());
  long long total = 0;
  for (size_t i = 0; i < increments_.size(); ++i) {
    if (increments_[i] < 1) {
      throw std::invalid_argument("increment " + std::to_string(i + 1) +
                                  " must be a positive symbol count, got " +
                                  std::to_string(increments_[i]));
    }
    total += increments_[i];
    if (total > (1LL << 30)) {
      throw std::invalid_argument("total blocklength exceeds supported range");
    }
    cumulative_.push_back(static_cast<int>(total));
  }
}

DecodingRadii optimistic_radii(const ChannelConfig& channel,
                               const MessageSet& messages,
                               const TransmissionSchedule& schedule) {
  DecodingRadii radii;
  radii.r_squared.reserve(schedule.transmissions());
  const double two_k_ln2 = 2.0 * messages.log2_m() * kLn2;
  for (int n : schedule.blocklengths()) {
    // N (1+eta) M^(-2/N), evaluated via exp to keep deep-rate cases exact
    radii.r_squared.push_back(n * (1.0 + channel.eta) *
                              std::exp(-two_k_ln2 / n));
  }
  return radii;
}

DecodingRadii minkowski_radii(const ChannelConfig& channel,
                              const MessageSet& messages,
                              const TransmissionSchedule& schedule, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("Minkowski density constant must be positive");
  }
  DecodingRadii radii = optimistic_radii(channel, messages, schedule);
  for (double& r : radii.r_squared) r *= 0.5 * c;
  return radii;
}

DecodingRadii radii_for(const ChannelConfig& channel, const MessageSet& messages,
                        const TransmissionSchedule& schedule,
                        const RadiusAssumption& assumption) {
  switch (assumption.kind) {
    case PackingKind::Optimistic:
      return optimistic_radii(channel, messages, schedule);
    case PackingKind::Minkowski:
      return minkowski_radii(channel, messages, schedule, assumption.c);
  }
  throw std::invalid_argument("unknown packing kind");
}

double per_transmission_rate(const MessageSet& messages,
                             const TransmissionSchedule& schedule, int i) {
  if (i < 1 || i > schedule.transmissions()) {
    throw std::invalid_argument("transmission index out of range");
  }
  return messages.log2_m() / schedule.blocklength(i);
}

namespace {

using nlohmann::json;

[[noreturn]] void bad_config(const std::string& detail) {
  throw std::invalid_argument("config: " + detail);
}

}  // namespace

AnalysisConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad_config(std::string("not valid JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) bad_config("top level must be an object");

  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "snr_db" && key != "k_bits" && key != "increments" &&
        key != "radius_assumption") {
      bad_config("unknown key \"" + key + "\"");
    }
  }
  if (!doc.contains("snr_db") || !doc["snr_db"].is_number()) {
    bad_config("\"snr_db\" must be present and numeric");
  }
  if (!doc.contains("k_bits") || !doc["k_bits"].is_number_integer()) {
    bad_config("\"k_bits\" must be present and an integer");
  }
  if (!doc.contains("increments") || !doc["increments"].is_array() ||
      doc["increments"].empty()) {
    bad_config("\"increments\" must be a nonempty array");
  }
  std::vector<int> increments;
  increments.reserve(doc["increments"].size());
  for (size_t i = 0; i < doc["increments"].size(); ++i) {
    const auto& entry = doc["increments"][i];
    if (!entry.is_number_integer()) {
      bad_config("increment " + std::to_string(i + 1) + " must be an integer");
    }
    increments.push_back(entry.get<int>());
  }

  RadiusAssumption assumption;
  if (doc.contains("radius_assumption")) {
    const auto& ra = doc["radius_assumption"];
    if (!ra.is_object()) bad_config("\"radius_assumption\" must be an object");
    for (const auto& [key, value] : ra.items()) {
      (void)value;
      if (key != "kind" && key != "c") {
        bad_config("unknown radius_assumption key \"" + key + "\"");
      }
    }
    if (ra.contains("kind")) {
      const std::string kind = ra["kind"].is_string()
                                   ? ra["kind"].get<std::string>()
                                   : std::string();
      if (kind == "optimistic") {
        assumption.kind = PackingKind::Optimistic;
      } else if (kind == "minkowski") {
        assumption.kind = PackingKind::Minkowski;
      } else {
        bad_config("radius_assumption.kind must be \"optimistic\" or \"minkowski\"");
      }
    }
    if (ra.contains("c")) {
      if (!ra["c"].is_number()) bad_config("radius_assumption.c must be numeric");
      assumption.c = ra["c"].get<double>();
      if (!(assumption.c > 0.0)) {
        bad_config("radius_assumption.c must be positive");
      }
    }
  }

  // The component constructors own the value checks so CLI and API share them.
  try {
    return AnalysisConfig{ChannelConfig::from_snr_db(doc["snr_db"].get<double>()),
                          MessageSet(doc["k_bits"].get<int>()),
                          TransmissionSchedule(std::move(increments)),
                          assumption};
  } catch (const std::invalid_argument& e) {
    bad_config(e.what());
  }
}

std::string config_to_json_text(const AnalysisConfig& config, int indent) {
  json doc;
  doc["snr_db"] = config.channel.snr_db;
  doc["k_bits"] = config.messages.k_bits;
  doc["increments"] = config.schedule.increments();
  doc["radius_assumption"] = {
      {"kind", config.assumption.kind == PackingKind::Optimistic ? "optimistic"
                                                                 : "minkowski"},
      {"c", config.assumption.c}};
  return doc.dump(indent);
}

}  // namespace rcsp
