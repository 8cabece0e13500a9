/*
 * Copyright 2026 The Tomaco Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TOMACO_ERRORS_H_
#define TOMACO_ERRORS_H_

#include <stdexcept>
#include <string>

namespace tomaco {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input is not well-formed XML, or a text format could not be read.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A service description without any interface/portType operation.
class EmptyServiceError : public Error {
 public:
  using Error::Error;
};

// An ontology document that declares no classes.
class EmptyOntologyError : public Error {
 public:
  using Error::Error;
};

// A query with neither requested inputs nor requested outputs.
class InvalidQueryError : public Error {
 public:
  using Error::Error;
};

// A MatchConfig outside its admissible parameter ranges.
class InvalidConfigError : public Error {
 public:
  using Error::Error;
};

// Evaluation was asked about a query that has no relevance judgments.
class MissingJudgmentsError : public Error {
 public:
  using Error::Error;
};

}  // namespace tomaco

#endif  // TOMACO_ERRORS_H_
