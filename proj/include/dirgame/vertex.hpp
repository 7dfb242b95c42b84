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

#ifndef DIRGAME_VERTEX_HPP_
#define DIRGAME_VERTEX_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace dirgame {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

/// Digest of the empty key (the root of every tree family).
inline constexpr std::uint64_t kEmptyKeyDigest = 0x6a09e667f3bcc909ULL;

/// Folds one key word into a running digest. The digest of a key is the
/// left fold of its words starting from kEmptyKeyDigest, so a tree child's
/// digest can be derived from its parent's without touching the full word.
constexpr std::uint64_t digest_step(std::uint64_t digest,
                                    std::int64_t word) noexcept {
  return mix64(digest ^
               mix64(static_cast<std::uint64_t>(word) + 0x9e3779b97f4a7c15ULL));
}

/// Canonical vertex identifier: a word of 64-bit integers.
///
/// Tree families use the path of child indices from the root; lattice
/// families use the coordinate vector; the H-chain uses (copy, label).
/// The word alone determines the out-neighbourhood.
class VertexId {
 public:
  VertexId() = default;
  explicit VertexId(std::vector<std::int64_t> words) : words_(std::move(words)) {}
  VertexId(std::initializer_list<std::int64_t> words) : words_(words) {}

  std::span<const std::int64_t> words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }
  std::int64_t operator[](std::size_t i) const { return words_[i]; }

  /// The key extended by one word (tree child).
  VertexId extended(std::int64_t word) const {
    VertexId out = *this;
    out.words_.push_back(word);
    return out;
  }

  bool has_prefix(const VertexId& prefix) const noexcept {
    if (prefix.size() > size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i)
      if (words_[i] != prefix.words_[i]) return false;
    return true;
  }

  std::uint64_t digest() const noexcept {
    std::uint64_t h = kEmptyKeyDigest;
    for (std::int64_t w : words_) h = digest_step(h, w);
    return h;
  }

  friend bool operator==(const VertexId&, const VertexId&) = default;
  friend auto operator<=>(const VertexId&, const VertexId&) = default;

 private:
  std::vector<std::int64_t> words_;
};

struct VertexIdHash {
  std::size_t operator()(const VertexId& v) const noexcept {
    return static_cast<std::size_t>(v.digest());
  }
};

}  // namespace dirgame

#endif  // DIRGAME_VERTEX_HPP_
