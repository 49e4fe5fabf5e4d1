#pragma once

#include <string>
#include <vector>

namespace rcsp {

// AWGN channel at a given SNR. Noise variance is fixed at 1 per dimension, so
// eta is both the linear SNR and the signal power per symbol.
struct ChannelConfig {
  double snr_db;
  double eta;  // 10^(snr_db/10)

  static ChannelConfig from_snr_db(double snr_db);
  static ChannelConfig from_eta(double eta);
};

// Real AWGN capacity (1/2)log2(1 + eta), bits per symbol.
double capacity(double eta);
double capacity_from_snr_db(double snr_db);

// 2^k_bits equally likely messages. The message count itself is never
// materialized; everything downstream uses log2(M) = k_bits.
struct MessageSet {
  explicit MessageSet(int k_bits);
  int k_bits;
  double log2_m() const { return static_cast<double>(k_bits); }
};

// Incremental transmission lengths I_1..I_m (symbols) and their cumulative
// blocklengths N_i = I_1 + ... + I_i. Increments are strictly positive.
class TransmissionSchedule {
 public:
  explicit TransmissionSchedule(std::vector<int> increments);

  int transmissions() const { return static_cast<int>(increments_.size()); }
  int increment(int i) const { return increments_[i - 1]; }    // 1-based
  int blocklength(int i) const { return cumulative_[i - 1]; }  // 1-based
  const std::vector<int>& increments() const { return increments_; }
  const std::vector<int>& blocklengths() const { return cumulative_; }

 private:
  std::vector<int> increments_;
  std::vector<int> cumulative_;
};

enum class PackingKind { Optimistic, Minkowski };

struct RadiusAssumption {
  PackingKind kind = PackingKind::Optimistic;
  double c = 1.0;  // Minkowski density constant; ignored for optimistic
};

// Squared decoding radii r_i^2, i = 1..m, aligned with the schedule.
struct DecodingRadii {
  std::vector<double> r_squared;
};

// Perfect-packing radii r_i^2 = N_i (1 + eta) 2^(-2 k / N_i): each of the M
// decoding spheres takes an equal share of the volume of the radius-
// sqrt(N_i(1+eta)) ball the received word concentrates in.
DecodingRadii optimistic_radii(const ChannelConfig& channel,
                               const MessageSet& messages,
                               const TransmissionSchedule& schedule);

// Minkowski-density packing: the optimistic squared radii scaled by c/2.
DecodingRadii minkowski_radii(const ChannelConfig& channel,
                              const MessageSet& messages,
                              const TransmissionSchedule& schedule, double c);

DecodingRadii radii_for(const ChannelConfig& channel, const MessageSet& messages,
                        const TransmissionSchedule& schedule,
                        const RadiusAssumption& assumption);

// Rate after transmission i, bits per symbol.
double per_transmission_rate(const MessageSet& messages,
                             const TransmissionSchedule& schedule, int i);

// One analysis instance as it appears in config files.
struct AnalysisConfig {
  ChannelConfig channel;
  MessageSet messages;
  TransmissionSchedule schedule;
  RadiusAssumption assumption;
};

// Parses a JSON config document:
//   { "snr_db": 2.0, "k_bits": 16, "increments": [32, 8, 8, 8, 8],
//     "radius_assumption": { "kind": "optimistic", "c": 1.0 } }
// radius_assumption is optional; unknown keys are rejected. Throws
// std::invalid_argument with a message naming the offending field.
AnalysisConfig parse_config(const std::string& json_text);

// Inverse of parse_config (2-space indented when indent >= 0).
std::string config_to_json_text(const AnalysisConfig& config, int indent = 2);

}  // namespace rcsp
