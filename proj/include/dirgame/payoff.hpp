// Copyright 2026 The dirgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIRGAME_PAYOFF_HPP_
#define DIRGAME_PAYOFF_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dirgame/vertex.hpp"

namespace dirgame {

class PayoffDistribution {
 public:
  enum class Kind { kBernoulli, kUniform, kDiscrete, kConstant };

  static PayoffDistribution bernoulli(double p);
  static PayoffDistribution uniform();
  static PayoffDistribution discrete(std::vector<double> values, std::vector<double> weights);
  static PayoffDistribution constant(double c);

  Kind kind() const { return kind_; }
  /// True when every draw is one of finitely many atoms.
  bool atomic() const { return kind_ != Kind::kUniform; }
  double p() const { return p_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& weights() const { return weights_; }
  double mean() const;

  /// Maps a uniform variate in [0,1) to a draw.
  double quantile(double u) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::kUniform;
  double p_ = 0.5;
  std::vector<double> values_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

/// Deterministic i.i.d. payoff assignment. G_v depends only on the seed, the
/// distribution and the digest of v's key; an optional table overrides it
/// for hand-built fixtures.
class PayoffField {
 public:
  PayoffField(std::uint64_t seed, PayoffDistribution dist);

  std::uint64_t seed() const { return seed_; }
  const PayoffDistribution& distribution() const { return dist_; }

  /// Pins the payoff of one vertex key; the value must lie in [0,1].
  void set_override(const VertexId& v, double value);
  bool has_overrides() const { return !overrides_.empty(); }

  double operator()(const VertexId& v) const { return at_digest(v.digest()); }
  double at_digest(std::uint64_t digest) const {
    if (!overrides_.empty()) {
      auto it = overrides_.find(digest);
      if (it != overrides_.end()) return it->second;
    }
    return dist_.quantile(uniform_at(digest));
  }
  /// The underlying uniform variate for a key digest.
  double uniform_at(std::uint64_t digest) const {
    const std::uint64_t h = mix64(mix64(digest ^ key_) + 0xd1b54a32d192ed03ULL);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
  PayoffDistribution dist_;
  std::unordered_map<std::uint64_t, double> overrides_;
};

double sample_payoff(const PayoffField& field, const VertexId& v);

}  // namespace dirgame

#endif  // DIRGAME_PAYOFF_HPP_
