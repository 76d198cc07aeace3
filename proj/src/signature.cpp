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

#include "soas/signature.hpp"

#include <stdexcept>
#include <tuple>

namespace soas {

struct Signature::Data {
  std::string name;
  std::vector<OperatorRef> operators;
  std::map<std::string, OperatorRef, std::less<>> by_tag;
  std::map<std::pair<std::string, std::size_t>, std::vector<OperatorRef>>
      guesses;
  std::vector<Shape> shapes;
  std::map<std::string, MatchOverride, std::less<>> overrides;
};

Signature::Signature() : data_(std::make_shared<Data>()) {}

Signature::Signature(std::shared_ptr<const Data> data)
    : data_(std::move(data)) {}

const std::string& Signature::name() const { return data_->name; }

const std::vector<OperatorRef>& Signature::operators() const {
  return data_->operators;
}

OperatorRef Signature::find(std::string_view tag) const {
  auto it = data_->by_tag.find(tag);
  return it == data_->by_tag.end() ? nullptr : it->second;
}

const OperatorRef& Signature::at(std::string_view tag) const {
  auto it = data_->by_tag.find(tag);
  if (it == data_->by_tag.end()) {
    throw MalformedTerm("operator " + std::string(tag) + " is not part of " +
                        data_->name);
  }
  return it->second;
}

Term Signature::make(std::string_view tag, std::vector<Term> children,
                     std::optional<TypeAnnotation> annotation) const {
  return Term::op(at(tag), std::move(children), std::move(annotation));
}

const std::vector<OperatorRef>& Signature::guesses(std::string_view tag,
                                                   std::size_t slot) const {
  static const std::vector<OperatorRef> none;
  auto it = data_->guesses.find({std::string(tag), slot});
  return it == data_->guesses.end() ? none : it->second;
}

const std::vector<Shape>& Signature::shapes() const { return data_->shapes; }

std::optional<std::size_t> Signature::head_slot(std::string_view tag) const {
  for (const auto& shape : data_->shapes) {
    if (shape.op->tag != tag) continue;
    for (std::size_t i = 0; i < shape.slots.size(); ++i) {
      if (shape.slots[i] == IsHead::HasHead) return i;
    }
  }
  return std::nullopt;
}

const MatchOverride* Signature::match_override(std::string_view tag) const {
  auto it = data_->overrides.find(tag);
  return it == data_->overrides.end() ? nullptr : &it->second;
}

Signature Signature::sum(std::string name, const Signature& left,
                         const Signature& right) {
  auto data = std::make_shared<Data>(*left.data_);
  data->name = std::move(name);
  for (const auto& op : right.data_->operators) {
    if (data->by_tag.count(op->tag) != 0) {
      throw std::invalid_argument("operator " + op->tag +
                                  " occurs in both summands");
    }
    data->operators.push_back(op);
    data->by_tag.emplace(op->tag, op);
  }
  for (const auto& [key, list] : right.data_->guesses) {
    data->guesses.emplace(key, list);
  }
  for (const auto& shape : right.data_->shapes) data->shapes.push_back(shape);
  for (const auto& [tag, fn] : right.data_->overrides) {
    data->overrides.emplace(tag, fn);
  }
  return Signature(std::move(data));
}

Signature::Builder::Builder(std::string name) : data_(std::make_shared<Data>()) {
  data_->name = std::move(name);
}

OperatorRef Signature::Builder::add_operator(std::string tag,
                                             std::vector<SlotKind> slots) {
  if (tag.empty()) throw std::invalid_argument("empty operator tag");
  if (data_->by_tag.count(tag) != 0) {
    throw std::invalid_argument("duplicate operator tag " + tag);
  }
  auto op = std::make_shared<const Operator>(Operator{tag, std::move(slots)});
  data_->operators.push_back(op);
  data_->by_tag.emplace(std::move(tag), op);
  return op;
}

Signature::Builder& Signature::Builder::add_guess(std::string_view tag,
                                                  std::size_t slot,
                                                  std::string_view guess_tag) {
  guesses_.emplace_back(std::string(tag), slot, std::string(guess_tag));
  return *this;
}

Signature::Builder& Signature::Builder::add_shape(std::string_view tag,
                                                  std::vector<IsHead> slots) {
  shapes_.emplace_back(std::string(tag), std::move(slots));
  return *this;
}

Signature::Builder& Signature::Builder::set_match_override(std::string_view tag,
                                                           MatchOverride fn) {
  data_->overrides[std::string(tag)] = std::move(fn);
  return *this;
}

Signature Signature::Builder::build() const {
  auto data = std::make_shared<Data>(*data_);
  auto lookup = [&](const std::string& tag) {
    auto it = data->by_tag.find(tag);
    if (it == data->by_tag.end()) {
      throw std::invalid_argument("unknown operator " + tag + " in " +
                                  data->name);
    }
    return it->second;
  };
  for (const auto& [tag, slot, guess] : guesses_) {
    auto op = lookup(tag);
    if (slot >= op->arity()) {
      throw std::invalid_argument("guess for missing slot " +
                                  std::to_string(slot) + " of " + tag);
    }
    data->guesses[{tag, slot}].push_back(lookup(guess));
  }
  for (const auto& [tag, marks] : shapes_) {
    auto op = lookup(tag);
    if (marks.size() != op->arity()) {
      throw std::invalid_argument("shape arity mismatch for " + tag);
    }
    bool has_head = false;
    for (auto m : marks) has_head = has_head || m == IsHead::HasHead;
    if (!has_head) {
      throw std::invalid_argument("shape for " + tag + " has no head slot");
    }
    data->shapes.push_back(Shape{op, marks});
  }
  for (const auto& [tag, fn] : data->overrides) lookup(tag);
  return Signature(std::move(data));
}

std::optional<MatchedNode> default_zip_match(const Term& left,
                                             const Term& right) {
  if (!left.is_op() || !right.is_op() || left.tag() != right.tag() ||
      left.op().slots != right.op().slots) {
    return std::nullopt;
  }
  MatchedNode out{left.op_ref(), {}};
  const auto& slots = left.op().slots;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Term& a = left.child(i);
    const Term& b = right.child(i);
    // Optional slots only match when both sides agree on presence.
    if (a.absent() != b.absent()) return std::nullopt;
    out.slots.push_back(SlotPair{slots[i], a, b});
  }
  return out;
}

std::optional<MatchedNode> zip_match(const Signature& sig, const Term& left,
                                     const Term& right) {
  if (!left.is_op() || !right.is_op() || left.tag() != right.tag()) {
    return std::nullopt;
  }
  if (const auto* fn = sig.match_override(left.tag())) return (*fn)(left, right);
  return default_zip_match(left, right);
}

std::vector<std::vector<OperatorRef>> guesses_for(const Signature& sig,
                                                  const Term& node) {
  std::vector<std::vector<OperatorRef>> out;
  if (!node.is_op()) return out;
  for (std::size_t i = 0; i < node.op().arity(); ++i) {
    out.push_back(sig.guesses(node.tag(), i));
  }
  return out;
}

const std::vector<Shape>& shapes_of(const Signature& sig) { return sig.shapes(); }

}  // namespace soas
