// Copyright 2026 The ipmo Authors
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

#include <stdexcept>
#include <string>

namespace ipmo {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Homogeneous third component vanished: the pixel sits on (or above) the
// horizon, or the ground point maps to infinity.
class DegenerateProjection : public Error {
 public:
  using Error::Error;
};

class HorizonNotInFrame : public Error {
 public:
  using Error::Error;
};

class UnknownLabel : public Error {
 public:
  using Error::Error;
};

class NotPsd : public Error {
 public:
  using Error::Error;
};

class NonMonotonicFrame : public Error {
 public:
  using Error::Error;
};

class InvalidPose : public Error {
 public:
  using Error::Error;
};

class FrameMismatch : public Error {
 public:
  using Error::Error;
};

// Bad configuration values, unreadable files, malformed JSON.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ipmo
