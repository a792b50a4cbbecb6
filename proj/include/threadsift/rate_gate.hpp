// Copyright 2026 The threadsift Authors
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

#ifndef THREADSIFT_RATE_GATE_HPP_
#define THREADSIFT_RATE_GATE_HPP_

#include <array>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>

#include "threadsift/clock.hpp"

namespace threadsift {

enum class Resource { kSearch, kCore };

struct RateBudget {
  std::int64_t limit;
  Seconds window;
};

// GitHub's published defaults. Response headers override them at runtime.
inline constexpr RateBudget kSearchAuthenticated{30, Seconds{60}};
inline constexpr RateBudget kSearchAnonymous{10, Seconds{60}};
inline constexpr RateBudget kCoreAuthenticated{5000, Seconds{3600}};
inline constexpr RateBudget kCoreAnonymous{60, Seconds{3600}};

struct GateStatus {
  std::int64_t remaining;
  TimePoint reset_at;
};

/// Shared request budget. Every dispatch goes through acquire(), which blocks
/// (on the injected clock) until both the sliding-window budget and the most
/// recent server-reported budget allow one more request.
class RateGate {
 public:
  RateGate(std::shared_ptr<Clock> clock, RateBudget search, RateBudget core);

  /// Records one dispatch. With `wait == false` a request that would have to
  /// wait throws RateLimited instead.
  void acquire(Resource r, bool wait = true);

  /// Server-reported budget from X-RateLimit-* headers. Headers win over the
  /// static window once observed.
  void observe(Resource r, std::int64_t remaining, TimePoint reset_at);

  /// Hold all dispatches of `r` until `until` (Retry-After handling).
  void block_until(Resource r, TimePoint until);

  GateStatus status(Resource r);

  Clock& clock() { return *clock_; }

 private:
  struct Lane {
    RateBudget budget;
    std::mutex mu;
    std::deque<TimePoint> sent;
    std::optional<std::int64_t> server_remaining;
    TimePoint server_reset{};
    TimePoint blocked_until{};
  };

  Lane& lane(Resource r) { return *lanes_[static_cast<std::size_t>(r)]; }
  void prune(Lane& l, TimePoint now);

  std::shared_ptr<Clock> clock_;
  std::array<std::unique_ptr<Lane>, 2> lanes_;
};

}  // namespace threadsift

#endif  // THREADSIFT_RATE_GATE_HPP_
