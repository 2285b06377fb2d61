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

#include "qspace/label.hpp"

#include <stdexcept>

namespace qspace {

OutcomeLabel::OutcomeLabel(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_) {
    if (c != '0' && c != '1') throw std::invalid_argument("not a bit string: " + bits_);
  }
}

OutcomeLabel OutcomeLabel::from_index(std::uint64_t value, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((value >> (width - 1 - i)) & 1U) s[i] = '1';
  }
  return OutcomeLabel(std::move(s));
}

OutcomeLabel OutcomeLabel::from_f2(const F2Vector& v) { return OutcomeLabel(v.to_string()); }

std::uint64_t OutcomeLabel::to_index() const {
  if (bits_.size() > 64) throw std::out_of_range("label too long for an index");
  std::uint64_t v = 0;
  for (char c : bits_) v = (v << 1) | (c == '1' ? 1U : 0U);
  return v;
}

F2Vector OutcomeLabel::to_f2() const { return F2Vector::from_string(bits_); }

}  // namespace qspace
