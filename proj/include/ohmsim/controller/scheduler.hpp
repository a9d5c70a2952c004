/*
 * Copyright 2026 The ohmsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>

namespace ohmsim::controller {

/// What the scheduler knows about one queued demand request.
struct Candidate {
  std::uint64_t age{0};  // arrival sequence; smaller is older
  bool is_read{true};
  bool row_hit{false};
  bool ready{true};  // not blocked by ordering, conflicts, or resources
};

enum class ActionKind : std::uint8_t { Idle, Demand, LaunchMigration };

struct Action {
  ActionKind kind{ActionKind::Idle};
  std::size_t index{0};  // into the candidate span for Demand
};

struct SchedulerPolicy {
  // Ohm-WOM/BW planar: hide swaps behind write traffic.
  bool background_migration{false};
};

struct MigrationView {
  bool pending{false};    // a launchable migration exists
  bool overdue{false};    // it has waited past the deferral bound
  bool writes_queued{false};
};

/// FR-FCFS: ready row hits before ready misses, reads before writes within
/// each class, then oldest first. Migrations launch only when no demand is
/// ready; background mode further waits for write traffic or an idle read
/// queue unless the task is overdue.
inline Action schedule(std::span<const Candidate> queue, const MigrationView& mig, const SchedulerPolicy& policy) {
  std::optional<std::size_t> best;
  auto rank = [](const Candidate& c) { return (c.row_hit ? 0 : 2) + (c.is_read ? 0 : 1); };
  bool reads_waiting = false;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const auto& c = queue[i];
    if (c.is_read) reads_waiting = true;
    if (!c.ready) continue;
    if (!best || rank(c) < rank(queue[*best]) || (rank(c) == rank(queue[*best]) && c.age < queue[*best].age)) best = i;
  }
  if (best) return {ActionKind::Demand, *best};
  if (mig.pending) {
    if (!policy.background_migration || mig.overdue || mig.writes_queued || !reads_waiting) {
      return {ActionKind::LaunchMigration, 0};
    }
  }
  return {};
}

}  // namespace ohmsim::controller
