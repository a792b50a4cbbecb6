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

#ifndef THREADSIFT_ERRORS_HPP_
#define THREADSIFT_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace threadsift {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// github_client
class InvalidToken : public Error {
 public:
  using Error::Error;
};
class FixtureNotFound : public Error {
 public:
  using Error::Error;
};
class QueryRejected : public Error {
 public:
  using Error::Error;
};
class RateLimited : public Error {
 public:
  using Error::Error;
};
/// 403 that carries no rate-limit signal.
class AccessDenied : public Error {
 public:
  using Error::Error;
};
class NetworkFailure : public Error {
 public:
  using Error::Error;
};
class IssueGone : public Error {
 public:
  using Error::Error;
};

// classifier
class UnsupportedVersion : public Error {
 public:
  using Error::Error;
};

/// A model document broke a structural invariant; `field()` names the culprit.
class SchemaViolation : public Error {
 public:
  SchemaViolation(std::string field, const std::string& detail)
      : Error("schema violation in '" + field + "': " + detail),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class EmptyCorpus : public Error {
 public:
  using Error::Error;
};
class UnknownCategory : public Error {
 public:
  using Error::Error;
};

class IoFailure : public Error {
 public:
  using Error::Error;
};

// cli
class UsageError : public Error {
 public:
  UsageError(std::string flag, const std::string& detail)
      : Error(flag.empty() ? detail : flag + ": " + detail),
        flag_(std::move(flag)) {}
  const std::string& flag() const noexcept { return flag_; }

 private:
  std::string flag_;
};

class Aborted : public Error {
 public:
  using Error::Error;
};

}  // namespace threadsift

#endif  // THREADSIFT_ERRORS_HPP_
