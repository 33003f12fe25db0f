// Copyright 2026 The slingloiter Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLINGLOITER_ERRORS_HPP_
#define SLINGLOITER_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace slingloiter {

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model or trajectory violates one of its stated invariants.
class InvalidModel : public Error {
 public:
  using Error::Error;
};

class CoincidentAnchors : public Error {
 public:
  CoincidentAnchors(int i, int j)
      : Error("anchors " + std::to_string(i + 1) + " and " +
              std::to_string(j + 1) + " coincide"),
        first(i),
        second(j) {}
  int first;
  int second;
};

class TooFewCables : public Error {
 public:
  explicit TooFewCables(int n)
      : Error("at least 3 cables required, got " + std::to_string(n)),
        count(n) {}
  int count;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(const std::string& what, long expected, long actual)
      : Error(what + ": expected dimension " + std::to_string(expected) +
              ", got " + std::to_string(actual)) {}
};

// Anchor points (or the anchor triangle of one cable) are collinear, so the
// requested construction has no well-defined plane.
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

// The tensioned-cable assumption fails: |f_i| <= tension epsilon.
class SlackCable : public Error {
 public:
  SlackCable(int cable_index, double t)
      : Error("cable " + std::to_string(cable_index + 1) +
              " slack at t = " + std::to_string(t) + " s"),
        cable(cable_index),
        time(t) {}
  int cable;
  double time;
};

// A config file or CSV does not match its schema.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class Diverged : public Error {
 public:
  explicit Diverged(double t)
      : Error("simulation diverged at t = " + std::to_string(t) + " s"),
        time(t) {}
  double time;
};

}  // namespace slingloiter

#endif  // SLINGLOITER_ERRORS_HPP_
