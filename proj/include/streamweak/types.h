// Copyright 2026 The streamweak Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STREAMWEAK_TYPES_H_
#define STREAMWEAK_TYPES_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace streamweak {

// Dense index of a ground-set element, in [0, n).
struct ElementId {
  std::uint32_t value = 0;

  constexpr ElementId() = default;
  constexpr explicit ElementId(std::uint32_t v) : value(v) {}
  friend constexpr auto operator<=>(ElementId, ElementId) = default;
};

std::vector<ElementId> ToElementIds(std::span<const std::uint32_t> ids);
std::vector<std::uint32_t> ToRawIds(std::span<const ElementId> ids);

// The universe of n stream elements, with optional per-element labels.
class GroundSet {
 public:
  explicit GroundSet(std::size_t n);
  GroundSet(std::size_t n, std::vector<std::string> labels);

  std::size_t size() const { return n_; }
  bool Contains(ElementId u) const { return u.value < n_; }
  bool has_labels() const { return !labels_.empty(); }
  // Returns the label, or the decimal id when no labels were supplied.
  std::string Label(ElementId u) const;

 private:
  std::size_t n_;
  std::vector<std::string> labels_;
};

// An ordered collection of distinct elements. Members keep insertion order;
// membership tests use a bitset for universes up to kBitsetLimit and a hash
// set above that.
class Subset {
 public:
  static constexpr std::size_t kBitsetLimit = std::size_t{1} << 20;

  explicit Subset(std::size_t universe);
  // Throws PreconditionError on duplicates or out-of-range ids.
  Subset(std::size_t universe, std::span<const ElementId> ids);
  static Subset Of(std::size_t universe,
                   std::initializer_list<std::uint32_t> ids);

  std::size_t universe() const { return universe_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::span<const ElementId> members() const { return members_; }

  bool Contains(ElementId u) const;
  // Appends u. Throws PreconditionError if u is present or out of range.
  void Insert(ElementId u);
  // Removes u if present, preserving the order of the rest.
  void Erase(ElementId u);
  void Clear();

  // Copy of this set with u appended.
  Subset With(ElementId u) const;

  std::vector<ElementId> Sorted() const;
  std::vector<std::uint32_t> SortedIds() const;

  // Set equality, ignoring member order.
  bool SameSetAs(const Subset& other) const;

 private:
  void CheckRange(ElementId u) const;

  std::size_t universe_;
  std::vector<ElementId> members_;
  std::vector<bool> bits_;
  std::unordered_set<std::uint32_t> hashed_;
};

}  // namespace streamweak

template <>
struct std::hash<streamweak::ElementId> {
  std::size_t operator()(streamweak::ElementId u) const noexcept {
    return std::hash<std::uint32_t>{}(u.value);
  }
};

#endif  // STREAMWEAK_TYPES_H_
