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

#include "threadsift/rate_gate.hpp"

#include <algorithm>

#include "threadsift/errors.hpp"

namespace threadsift {

namespace {
// Keeps a simulated clock moving even when the computed wait underflows.
constexpr Seconds kMinSleep{1e-3};
}  // namespace

RateGate::RateGate(std::shared_ptr<Clock> clock, RateBudget search, RateBudget core)
    : clock_(std::move(clock)) {
  lanes_[0] = std::make_unique<Lane>();
  lanes_[0]->budget = search;
  lanes_[1] = std::make_unique<Lane>();
  lanes_[1]->budget = core;
}

void RateGate::prune(Lane& l, TimePoint now) {
  while (!l.sent.empty() && l.sent.front() + l.budget.window <= now) l.sent.pop_front();
  if (l.server_remaining && l.server_reset <= now) l.server_remaining.reset();
}

void RateGate::acquire(Resource r, bool wait) {
  Lane& l = lane(r);
  std::lock_guard<std::mutex> lock(l.mu);
  for (;;) {
    const TimePoint now = clock_->now();
    prune(l, now);
    TimePoint ready = now;
    if (static_cast<std::int64_t>(l.sent.size()) >= l.budget.limit)
      ready = std::max(ready, l.sent.front() + l.budget.window);
    if (l.server_remaining && *l.server_remaining <= 0)
      ready = std::max(ready, l.server_reset);
    ready = std::max(ready, l.blocked_until);

    if (ready <= now) {
      l.sent.push_back(now);
      if (l.server_remaining) --*l.server_remaining;
      return;
    }
    if (!wait) throw RateLimited("request budget exhausted; retry after reset");
    clock_->sleep_for(std::max(Seconds{ready - now}, kMinSleep));
  }
}

void RateGate::observe(Resource r, std::int64_t remaining, TimePoint reset_at) {
  Lane& l = lane(r);
  std::lock_guard<std::mutex> lock(l.mu);
  l.server_remaining = std::max<std::int64_t>(0, remaining);
  l.server_reset = reset_at;
}

void RateGate::block_until(Resource r, TimePoint until) {
  Lane& l = lane(r);
  std::lock_guard<std::mutex> lock(l.mu);
  l.blocked_until = std::max(l.blocked_until, until);
}

GateStatus RateGate::status(Resource r) {
  Lane& l = lane(r);
  std::lock_guard<std::mutex> lock(l.mu);
  const TimePoint now = clock_->now();
  prune(l, now);
  std::int64_t remaining =
      std::max<std::int64_t>(0, l.budget.limit - static_cast<std::int64_t>(l.sent.size()));
  TimePoint reset = l.sent.empty() ? now : l.sent.front() + l.budget.window;
  if (l.server_remaining) {
    remaining = std::min(remaining, *l.server_remaining);
    if (*l.server_remaining <= 0) reset = std::max(reset, l.server_reset);
  }
  if (l.blocked_until > now) {
    remaining = 0;
    reset = std::max(reset, l.blocked_until);
  }
  return {remaining, reset};
}

}  // namespace threadsift
