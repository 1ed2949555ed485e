// Copyright 2026 The Semfrag Authors
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

#ifndef SEMFRAG_ERRORS_HPP_
#define SEMFRAG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace semfrag {

// Base class for every error raised by the library. The CLI maps these to
// exit code 1 (validation / input problems).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed dataset rows, bad file formats, unreadable inputs.
class DataError : public Error {
 public:
  using Error::Error;
};

class InventoryError : public Error {
 public:
  using Error::Error;
};

class LexiconError : public Error {
 public:
  using Error::Error;
};

class KbError : public Error {
 public:
  using Error::Error;
};

// A sentence that the controlled grammar cannot parse.
class SentenceError : public Error {
 public:
  using Error::Error;
};

class FormulaError : public Error {
 public:
  using Error::Error;
};

class OracleError : public Error {
 public:
  using Error::Error;
};

// Generation could not reach the requested counts (key space exhausted).
class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace semfrag

#endif  // SEMFRAG_ERRORS_HPP_
