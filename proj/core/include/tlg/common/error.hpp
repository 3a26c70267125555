// Copyright 2026 The tlg Authors.
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

namespace tlg {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed arguments that violate a precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input data (corpus, model file, document) is unusable.
class DataError : public Error {
 public:
  using Error::Error;
};

// Remote logit source: the connection or child process failed.
class TransportError : public Error {
 public:
  using Error::Error;
};

// Remote logit source: the peer answered, but not per the protocol.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace tlg
