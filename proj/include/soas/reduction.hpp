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

#ifndef SOAS_REDUCTION_HPP
#define SOAS_REDUCTION_HPP

#include <cstddef>
#include <functional>
#include <set>
#include <string>

#include "soas/term.hpp"

namespace soas {

inline constexpr std::size_t kDefaultReduceFuel = 10000;

// Whole-language weak-head reduction, handed to component reducers.
using Recurse = std::function<Term(const Term&)>;

/// Weak-head reduction for one component of a summed signature. `step`
/// gets an operator node whose tag is in `tags` (children unreduced) and a
/// callback reducing arbitrary terms of the full language.
struct Reducer {
  std::set<std::string> tags;
  std::function<Term(const Term& node, const Recurse& reduce)> step;

  bool handles(const std::string& tag) const { return tags.count(tag) != 0; }
};

// The unit of sum_reduce: handles no operator.
Reducer empty_reduce();

// Dispatches each node to the component owning its tag. Throws
// std::invalid_argument when the tag sets overlap.
Reducer sum_reduce(const Reducer& left, const Reducer& right);

/// Step and nesting budget shared by every recursive call of one reduction.
class ReduceBudget {
 public:
  explicit ReduceBudget(std::size_t fuel = kDefaultReduceFuel,
                        std::size_t max_depth = 2000)
      : fuel_(fuel), max_depth_(max_depth) {}

  void enter();
  void leave() { --depth_; }
  std::size_t steps() const { return steps_; }

 private:
  std::size_t fuel_;
  std::size_t max_depth_;
  std::size_t steps_ = 0;
  std::size_t depth_ = 0;
};

/// Weak head normal form. Variables are returned as is, metavariable
/// applications get their arguments reduced, operator nodes go to their
/// component. Throws FuelExhausted when the budget runs out.
Term reduce(const Reducer& reducer, const Term& t,
            std::size_t fuel = kDefaultReduceFuel);
Term reduce(const Reducer& reducer, const Term& t, ReduceBudget& budget);

}  // namespace soas

#endif  // SOAS_REDUCTION_HPP
