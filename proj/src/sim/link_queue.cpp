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

#include "policysim/sim/link_queue.hpp"

#include <algorithm>
#include <limits>

namespace policysim {

LinkQueues::LinkQueues(const Network& net)
    : free_flow_(net.num_links()), service_(net.num_links()), last_exit_(net.num_links()) {
  for (std::size_t i = 0; i < net.num_links(); ++i) {
    const auto& l = net.link(static_cast<int>(i));
    free_flow_[i] = l.free_flow_s();
    service_[i] = 3600.0 / l.capacity_vph;
  }
  reset();
}

void LinkQueues::reset() { std::fill(last_exit_.begin(), last_exit_.end(), -std::numeric_limits<double>::infinity()); }

double LinkQueues::enter(int link, double t) {
  const double exit = std::max(t + free_flow_[link], last_exit_[link] + service_[link]);
  last_exit_[link] = exit;
  return exit;
}

std::vector<LinkPassage> traverse_links(LinkQueues& queues, std::span<const int> path, double t) {
  std::vector<LinkPassage> out;
  out.reserve(path.size());
  for (int li : path) {
    const double exit = queues.enter(li, t);
    out.push_back({li, t, exit});
    t = exit;
  }
  return out;
}

}  // namespace policysim
