// Copyright 2026 The soas Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOAS_SIGNATURE_HPP
#define SOAS_SIGNATURE_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "soas/term.hpp"

namespace soas {

enum class IsHead { HasHead, NoHead };

// An operator skeleton with every slot marked as holding the head or not.
struct Shape {
  OperatorRef op;
  std::vector<IsHead> slots;
};

// One slot of a matched node. For an optional slot left empty on both sides,
// `left` and `right` are both absent.
struct SlotPair {
  SlotKind kind;
  Term left;
  Term right;
};

struct MatchedNode {
  OperatorRef op;
  std::vector<SlotPair> slots;
};

// Per-tag replacement for the default tag-equality matching.
using MatchOverride =
    std::function<std::optional<MatchedNode>(const Term&, const Term&)>;

/// Runtime descriptor of an object language: its operators, the structural
/// guesses offered for metavariables in each slot, the head shapes used for
/// candidate generation, and any custom matching rules. Immutable; copies
/// share the same tables.
class Signature {
 public:
  class Builder;

  Signature();

  const std::string& name() const;
  const std::vector<OperatorRef>& operators() const;

  // nullptr when the tag is unknown.
  OperatorRef find(std::string_view tag) const;
  // Throws MalformedTerm when the tag is unknown.
  const OperatorRef& at(std::string_view tag) const;
  bool has(std::string_view tag) const { return find(tag) != nullptr; }

  // Builds a node of this signature, checking arity and slot kinds.
  Term make(std::string_view tag, std::vector<Term> children,
            std::optional<TypeAnnotation> annotation = std::nullopt) const;

  const std::vector<OperatorRef>& guesses(std::string_view tag,
                                          std::size_t slot) const;
  const std::vector<Shape>& shapes() const;

  // The head slot of the first shape for `tag`, if any.
  std::optional<std::size_t> head_slot(std::string_view tag) const;

  const MatchOverride* match_override(std::string_view tag) const;

  // Disjoint union of two signatures. Throws std::invalid_argument when the
  // tag sets overlap.
  static Signature sum(std::string name, const Signature& left,
                       const Signature& right);

 private:
  struct Data;
  explicit Signature(std::shared_ptr<const Data> data);
  std::shared_ptr<const Data> data_;
};

class Signature::Builder {
 public:
  explicit Builder(std::string name);

  OperatorRef add_operator(std::string tag, std::vector<SlotKind> slots);
  Builder& add_guess(std::string_view tag, std::size_t slot,
                     std::string_view guess_tag);
  Builder& add_shape(std::string_view tag, std::vector<IsHead> slots);
  Builder& set_match_override(std::string_view tag, MatchOverride fn);

  // Validates guesses and shapes against the operator table.
  Signature build() const;

 private:
  std::shared_ptr<Data> data_;
  std::vector<std::tuple<std::string, std::size_t, std::string>> guesses_;
  std::vector<std::pair<std::string, std::vector<IsHead>>> shapes_;
};

/// Matches two operator nodes of `sig`. Absent when the tags differ or the
/// tag's override refuses; otherwise the slots are paired up.
std::optional<MatchedNode> zip_match(const Signature& sig, const Term& left,
                                     const Term& right);

// Default pairing used when no override exists; also handy inside overrides.
std::optional<MatchedNode> default_zip_match(const Term& left,
                                             const Term& right);

std::vector<std::vector<OperatorRef>> guesses_for(const Signature& sig,
                                                  const Term& node);
const std::vector<Shape>& shapes_of(const Signature& sig);

}  // namespace soas

#endif  // SOAS_SIGNATURE_HPP
