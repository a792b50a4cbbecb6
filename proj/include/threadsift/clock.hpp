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

#ifndef THREADSIFT_CLOCK_HPP_
#define THREADSIFT_CLOCK_HPP_

#include <chrono>
#include <mutex>

namespace threadsift {

using Seconds = std::chrono::duration<double>;
using TimePoint = std::chrono::time_point<std::chrono::system_clock, Seconds>;

/// Time source for rate accounting and backoff. Injected so tests can run
/// throttling scenarios on a simulated timeline.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual TimePoint now() const = 0;
  virtual void sleep_for(Seconds d) = 0;
};

class SystemClock final : public Clock {
 public:
  TimePoint now() const override;
  void sleep_for(Seconds d) override;
};

/// Never blocks; sleeping just advances the simulated time.
class SimulatedClock final : public Clock {
 public:
  explicit SimulatedClock(TimePoint start = TimePoint{Seconds{1'700'000'000.0}})
      : now_(start) {}

  TimePoint now() const override;
  void sleep_for(Seconds d) override;
  void advance(Seconds d) { sleep_for(d); }

 private:
  mutable std::mutex mu_;
  TimePoint now_;
};

}  // namespace threadsift

#endif  // THREADSIFT_CLOCK_HPP_
