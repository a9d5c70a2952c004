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

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ohmsim/workload/request.hpp"

namespace ohmsim::workload {

class TraceError : public std::runtime_error {
 public:
  TraceError(std::size_t line, const std::string& what)
      : std::runtime_error("trace line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One record per line: `<time_ns> <R|W> <hex_addr> <size_bytes>`.
/// Blank lines and `#` comments are skipped; timestamps must not decrease.
inline std::vector<MemRequest> parse_trace(std::istream& in) {
  std::vector<MemRequest> out;
  std::string line;
  std::size_t n = 0;
  std::uint64_t last_ns = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream is(line);
    std::string t, op, addr, size;
    if (!(is >> t)) continue;
    if (!(is >> op >> addr >> size)) throw TraceError(n, "expected 4 fields");
    std::string extra;
    if (is >> extra) throw TraceError(n, "trailing field '" + extra + "'");

    auto number = [&](const std::string& s, int base, const char* what) {
      std::uint64_t v = 0;
      const char* b = s.data();
      const char* e = s.data() + s.size();
      if (base == 16 && s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) b += 2;
      auto [p, ec] = std::from_chars(b, e, v, base);
      if (ec != std::errc() || p != e || b == e) throw TraceError(n, std::string("bad ") + what + " '" + s + "'");
      return v;
    };
    MemRequest r;
    r.id = out.size();
    const std::uint64_t ns = number(t, 10, "timestamp");
    if (ns < last_ns) throw TraceError(n, "timestamps out of order");
    last_ns = ns;
    r.issue_time = nanoseconds(ns);
    if (op == "R" || op == "r") {
      r.kind = RequestKind::Read;
    } else if (op == "W" || op == "w") {
      r.kind = RequestKind::Write;
    } else {
      throw TraceError(n, "operation must be R or W");
    }
    r.address = number(addr, 16, "address");
    if (size.starts_with("-")) throw TraceError(n, "size must be positive");
    const std::uint64_t sz = number(size, 10, "size");
    if (sz == 0 || sz > UINT32_MAX) throw TraceError(n, "size must be positive");
    r.size = static_cast<std::uint32_t>(sz);
    out.push_back(r);
  }
  return out;
}

inline void emit_trace(std::ostream& os, const std::vector<MemRequest>& reqs) {
  for (const auto& r : reqs) {
    os << r.issue_time.ps / 1000 << ' ' << (r.is_read() ? 'R' : 'W') << " 0x" << std::hex << r.address << std::dec
       << ' ' << r.size << '\n';
  }
}

}  // namespace ohmsim::workload
