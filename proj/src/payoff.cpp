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

#include "dirgame/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dirgame/errors.hpp"

namespace dirgame {
namespace {

bool in_unit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

}  // namespace

PayoffDistribution PayoffDistribution::bernoulli(double p) {
  if (!in_unit(p)) throw SpecError("Bernoulli p must lie in [0,1]");
  PayoffDistribution d;
  d.kind_ = Kind::kBernoulli;
  d.p_ = p;
  d.values_ = {0.0, 1.0};
  d.weights_ = {1.0 - p, p};
  return d;
}

PayoffDistribution PayoffDistribution::uniform() {
  PayoffDistribution d;
  d.kind_ = Kind::kUniform;
  return d;
}

PayoffDistribution PayoffDistribution::constant(double c) {
  if (!in_unit(c)) throw SpecError("constant payoff must lie in [0,1]");
  PayoffDistribution d;
  d.kind_ = Kind::kConstant;
  d.values_ = {c};
  d.weights_ = {1.0};
  return d;
}

PayoffDistribution PayoffDistribution::discrete(std::vector<double> values,
                                                std::vector<double> weights) {
  if (values.empty()) throw SpecError("discrete payoff needs at least one value");
  if (weights.empty()) weights.assign(values.size(), 1.0);
  if (weights.size() != values.size()) {
    throw SpecError("discrete payoff has " + std::to_string(values.size()) + " values but " +
                    std::to_string(weights.size()) + " weights");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!in_unit(values[i])) throw SpecError("discrete payoff values must lie in [0,1]");
    if (!std::isfinite(weights[i]) || weights[i] < 0.0) {
      throw SpecError("discrete payoff weights must be non-negative");
    }
    total += weights[i];
  }
  if (!(total > 0.0)) throw SpecError("discrete payoff weights sum to zero");
  PayoffDistribution d;
  d.kind_ = Kind::kDiscrete;
  d.values_ = std::move(values);
  d.weights_ = std::move(weights);
  double acc = 0.0;
  for (double w : d.weights_) {
    acc += w / total;
    d.cumulative_.push_back(acc);
  }
  return d;
}

double PayoffDistribution::mean() const {
  switch (kind_) {
    case Kind::kBernoulli: return p_;
    case Kind::kUniform: return 0.5;
    case Kind::kConstant: return values_[0];
    case Kind::kDiscrete: {
      double m = 0.0, total = 0.0;
      for (std::size_t i = 0; i < values_.size(); ++i) {
        m += values_[i] * weights_[i];
        total += weights_[i];
      }
      return m / total;
    }
  }
  return 0.0;
}

double PayoffDistribution::quantile(double u) const {
  switch (kind_) {
    case Kind::kBernoulli: return u < p_ ? 1.0 : 0.0;
    case Kind::kUniform: return u;
    case Kind::kConstant: return values_[0];
    case Kind::kDiscrete: {
      auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
      if (i >= values_.size()) {
        // rounding left the last cumulative weight just below 1
        i = values_.size() - 1;
        while (i > 0 && weights_[i] == 0.0) --i;
      }
      return values_[i];
    }
  }
  return 0.0;
}

std::string PayoffDistribution::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::kBernoulli: os << "bernoulli(" << p_ << ")"; break;
    case Kind::kUniform: os << "uniform"; break;
    case Kind::kConstant: os << "constant(" << values_[0] << ")"; break;
    case Kind::kDiscrete: os << "discrete(" << values_.size() << " atoms)"; break;
  }
  return os.str();
}

PayoffField::PayoffField(std::uint64_t seed, PayoffDistribution dist)
    : seed_(seed), key_(mix64(seed ^ 0x243f6a8885a308d3ULL)), dist_(std::move(dist)) {}

void PayoffField::set_override(const VertexId& v, double value) {
  if (!in_unit(value)) throw SpecError("payoff override must lie in [0,1]");
  overrides_[v.digest()] = value;
}

double sample_payoff(const PayoffField& field, const VertexId& v) { return field(v); }

}  // namespace dirgame
