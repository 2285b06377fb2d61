// Copyright 2026 The qspace Authors
//
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

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "qspace/f2.hpp"

namespace qspace {

/**
 * A classical outcome: a string of bits, possibly empty. New bits are always
 * appended on the right. Ordering is lexicographic on the bit string.
 */
class OutcomeLabel {
 public:
  OutcomeLabel() = default;
  explicit OutcomeLabel(std::string bits);
  // Big-endian: the first character is the most significant bit of value.
  static OutcomeLabel from_index(std::uint64_t value, int width);
  static OutcomeLabel from_f2(const F2Vector& v);

  const std::string& bits() const { return bits_; }
  int size() const { return static_cast<int>(bits_.size()); }
  bool empty() const { return bits_.empty(); }
  bool bit(int i) const { return bits_.at(static_cast<std::size_t>(i)) == '1'; }
  std::uint64_t to_index() const;
  F2Vector to_f2() const;

  OutcomeLabel prefix(int n) const { return OutcomeLabel(bits_.substr(0, n)); }
  OutcomeLabel suffix_from(int n) const { return OutcomeLabel(bits_.substr(n)); }
  OutcomeLabel operator+(const OutcomeLabel& o) const { return OutcomeLabel(bits_ + o.bits_); }
  OutcomeLabel with_bit(bool b) const { return OutcomeLabel(bits_ + (b ? '1' : '0')); }

  friend bool operator==(const OutcomeLabel&, const OutcomeLabel&) = default;
  friend auto operator<=>(const OutcomeLabel&, const OutcomeLabel&) = default;

 private:
  std::string bits_;
};

}  // namespace qspace
