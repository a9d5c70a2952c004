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

#include "ohmsim/sim/time.hpp"

namespace ohmsim::workload {

enum class RequestKind : std::uint8_t { Read, Write };

struct MemRequest {
  std::uint64_t id{0};
  RequestKind kind{RequestKind::Read};
  std::uint64_t address{0};
  std::uint32_t size{0};
  SimTime issue_time;
  int controller_id{-1};
  std::optional<SimTime> completion_time;

  bool is_read() const { return kind == RequestKind::Read; }
  friend bool operator==(const MemRequest&, const MemRequest&) = default;
};

}  // namespace ohmsim::workload
