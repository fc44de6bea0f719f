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

#include "streamweak/types.h"

#include <algorithm>
#include <string>

#include "streamweak/error.h"

namespace streamweak {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParameter:
      return "parameter error";
    case ErrorCode::kPrecondition:
      return "precondition error";
    case ErrorCode::kStream:
      return "stream error";
    case ErrorCode::kCapacity:
      return "capacity error";
    case ErrorCode::kOracle:
      return "oracle error";
    case ErrorCode::kConnection:
      return "connection error";
    case ErrorCode::kIo:
      return "i/o error";
  }
  return "unknown error";
}

std::vector<ElementId> ToElementIds(std::span<const std::uint32_t> ids) {
  std::vector<ElementId> out;
  out.reserve(ids.size());
  for (const std::uint32_t id : ids) out.emplace_back(id);
  return out;
}

std::vector<std::uint32_t> ToRawIds(std::span<const ElementId> ids) {
  std::vector<std::uint32_t> out;
  out.reserve(ids.size());
  for (const ElementId u : ids) out.push_back(u.value);
  return out;
}

GroundSet::GroundSet(std::size_t n) : n_(n) {
  if (n == 0) throw ParameterError("ground set must have at least one element");
}

GroundSet::GroundSet(std::size_t n, std::vector<std::string> labels)
    : GroundSet(n) {
  if (!labels.empty() && labels.size() != n) {
    throw ParameterError("ground set has " + std::to_string(n) +
                         " elements but " + std::to_string(labels.size()) +
                         " labels");
  }
  labels_ = std::move(labels);
}

std::string GroundSet::Label(ElementId u) const {
  if (labels_.empty() || u.value >= labels_.size()) {
    return std::to_string(u.value);
  }
  return labels_[u.value];
}

Subset::Subset(std::size_t universe) : universe_(universe) {
  if (universe_ <= kBitsetLimit) bits_.assign(universe_, false);
}

Subset::Subset(std::size_t universe, std::span<const ElementId> ids)
    : Subset(universe) {
  members_.reserve(ids.size());
  for (const ElementId u : ids) Insert(u);
}

Subset Subset::Of(std::size_t universe,
                  std::initializer_list<std::uint32_t> ids) {
  Subset s(universe);
  for (const std::uint32_t id : ids) s.Insert(ElementId(id));
  return s;
}

void Subset::CheckRange(ElementId u) const {
  if (u.value >= universe_) {
    throw PreconditionError("element " + std::to_string(u.value) +
                            " outside ground set of size " +
                            std::to_string(universe_));
  }
}

bool Subset::Contains(ElementId u) const {
  if (u.value >= universe_) return false;
  if (universe_ <= kBitsetLimit) return bits_[u.value];
  return hashed_.contains(u.value);
}

void Subset::Insert(ElementId u) {
  CheckRange(u);
  if (Contains(u)) {
    throw PreconditionError("element " + std::to_string(u.value) +
                            " already in subset");
  }
  if (universe_ <= kBitsetLimit) {
    bits_[u.value] = true;
  } else {
    hashed_.insert(u.value);
  }
  members_.push_back(u);
}

void Subset::Erase(ElementId u) {
  if (!Contains(u)) return;
  if (universe_ <= kBitsetLimit) {
    bits_[u.value] = false;
  } else {
    hashed_.erase(u.value);
  }
  members_.erase(std::find(members_.begin(), members_.end(), u));
}

void Subset::Clear() {
  for (const ElementId u : members_) {
    if (universe_ <= kBitsetLimit) bits_[u.value] = false;
  }
  hashed_.clear();
  members_.clear();
}

Subset Subset::With(ElementId u) const {
  Subset out = *this;
  out.Insert(u);
  return out;
}

std::vector<ElementId> Subset::Sorted() const {
  std::vector<ElementId> out = members_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> Subset::SortedIds() const {
  std::vector<ElementId> sorted = Sorted();
  return ToRawIds(sorted);
}

bool Subset::SameSetAs(const Subset& other) const {
  if (size() != other.size()) return false;
  return std::all_of(members_.begin(), members_.end(),
                     [&](ElementId u) { return other.Contains(u); });
}

}  // namespace streamweak
