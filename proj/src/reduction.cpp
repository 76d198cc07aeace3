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

#include "soas/reduction.hpp"

#include <stdexcept>

namespace soas {

Reducer empty_reduce() {
  return Reducer{{}, [](const Term& node, const Recurse&) { return node; }};
}

Reducer sum_reduce(const Reducer& left, const Reducer& right) {
  Reducer out;
  out.tags = left.tags;
  for (const auto& tag : right.tags) {
    if (!out.tags.insert(tag).second) {
      throw std::invalid_argument("reducers overlap on " + tag);
    }
  }
  out.step = [left, right](const Term& node, const Recurse& reduce) {
    if (left.handles(node.tag())) return left.step(node, reduce);
    if (right.handles(node.tag())) return right.step(node, reduce);
    return node;
  };
  return out;
}

void ReduceBudget::enter() {
  if (++steps_ > fuel_) {
    throw FuelExhausted("reduction exceeded " + std::to_string(fuel_) +
                        " steps");
  }
  if (++depth_ > max_depth_) {
    --depth_;
    throw FuelExhausted("reduction nested deeper than " +
                        std::to_string(max_depth_));
  }
}

namespace {

struct DepthGuard {
  ReduceBudget& budget;
  ~DepthGuard() { budget.leave(); }
};

}  // namespace

Term reduce(const Reducer& reducer, const Term& t, ReduceBudget& budget) {
  if (t.absent() || t.is_var()) return t;
  budget.enter();
  DepthGuard guard{budget};
  Recurse recurse = [&](const Term& u) { return reduce(reducer, u, budget); };
  if (t.is_meta()) {
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(recurse(a));
    return t.with_children(std::move(args));
  }
  if (!reducer.handles(t.tag())) return t;
  return reducer.step(t, recurse);
}

Term reduce(const Reducer& reducer, const Term& t, std::size_t fuel) {
  ReduceBudget budget(fuel);
  return reduce(reducer, t, budget);
}

}  // namespace soas
