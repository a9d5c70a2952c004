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
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ohmsim/sim/time.hpp"

namespace ohmsim {

/// Raised when a component tries to schedule an event in the past. This is
/// always a simulator bug; runs abort.
class SchedulingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using ComponentId = std::uint32_t;

struct Event {
  SimTime fire_time;
  ComponentId target{0};
  std::function<void()> payload;
  std::uint64_t sequence{0};
};

struct EventHandle {
  std::uint64_t sequence{0};
  friend bool operator==(EventHandle, EventHandle) = default;
};

struct RunSummary {
  SimTime last_fired;
  std::uint64_t events_fired{0};
};

/// Deterministic single-threaded discrete-event engine. Events fire in
/// (fire_time, sequence) order; sequence is the insertion counter.
class Engine {
 public:
  SimTime now() const { return now_; }
  std::uint64_t pending() const { return live_.size(); }
  std::uint64_t fired_total() const { return fired_total_; }

  EventHandle schedule(SimTime at, ComponentId target, std::function<void()> payload) {
    if (at < now_) {
      throw SchedulingError("event scheduled at " + std::to_string(at.ps) + "ps before current time " +
                            std::to_string(now_.ps) + "ps");
    }
    const std::uint64_t seq = next_seq_++;
    heap_.push(Entry{at, seq, target, std::move(payload)});
    live_.insert(seq);
    return EventHandle{seq};
  }

  EventHandle schedule(SimTime at, std::function<void()> payload) { return schedule(at, 0, std::move(payload)); }

  EventHandle schedule_after(SimTime delay, std::function<void()> payload) {
    return schedule(now_ + delay, 0, std::move(payload));
  }

  /// Schedules a fully-formed event. The event's own sequence field is
  /// ignored; the engine assigns the tie-break counter.
  EventHandle schedule(Event ev) { return schedule(ev.fire_time, ev.target, std::move(ev.payload)); }

  /// True iff the event was still pending.
  bool cancel(EventHandle h) { return live_.erase(h.sequence) > 0; }

  /// Delivers every event with fire_time <= limit.
  RunSummary run_until(SimTime limit) {
    RunSummary s{now_, 0};
    while (!heap_.empty() && heap_.top().at <= limit) {
      if (!fire_next()) continue;
      s.last_fired = now_;
      ++s.events_fired;
    }
    return s;
  }

  RunSummary run() { return run_until(SimTime::max()); }

  /// Observer invoked after each delivered event (used for invariant checks).
  void set_post_event_hook(std::function<void()> hook) { post_hook_ = std::move(hook); }

 private:
  struct Entry {
    SimTime at;
    std::uint64_t seq;
    ComponentId target;
    std::function<void()> fn;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.at != b.at) return a.at > b.at;
      return a.seq > b.seq;
    }
  };

  bool fire_next() {
    // priority_queue::top is const; the payload is moved out via const_cast
    // right before the pop, which never reorders the heap.
    Entry& top = const_cast<Entry&>(heap_.top());
    const bool live = live_.erase(top.seq) > 0;
    auto fn = std::move(top.fn);
    const SimTime at = top.at;
    heap_.pop();
    if (!live) return false;
    now_ = at;
    ++fired_total_;
    if (fn) fn();
    if (post_hook_) post_hook_();
    return true;
  }

  SimTime now_{};
  std::uint64_t next_seq_{0};
  std::uint64_t fired_total_{0};
  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
  std::unordered_set<std::uint64_t> live_;
  std::function<void()> post_hook_;
};

}  // namespace ohmsim
