// Copyright 2026 The policysim Authors
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

#include <span>
#include <vector>

#include "policysim/scenario/network.hpp"

namespace policysim {

/// Point-queue link model. Each link releases at most one vehicle every 3600/capacity seconds,
/// in entry order; a vehicle exits at max(entry + free-flow time, previous exit + 3600/capacity).
class LinkQueues {
 public:
  explicit LinkQueues(const Network& net);

  void reset();
  /// Entries on one link must arrive in nondecreasing time. Returns the exit time.
  double enter(int link, double t);

 private:
  std::vector<double> free_flow_;
  std::vector<double> service_;
  std::vector<double> last_exit_;
};

struct LinkPassage {
  int link;
  double enter;
  double exit;
};

/// Drives one vehicle along `path` starting at `t`, link by link, through `queues`.
std::vector<LinkPassage> traverse_links(LinkQueues& queues, std::span<const int> path, double t);

}  // namespace policysim
