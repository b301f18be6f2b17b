// Copyright 2026 The FogGate Authors
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

namespace foggate {

/// Base of every error the library raises. Each subclass names one failure
/// class from the protocol so callers and tests can branch on type.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define FOGGATE_DEFINE_ERROR(Name)          \
  class Name : public Error {               \
  public:                                   \
    using Error::Error;                     \
  }

FOGGATE_DEFINE_ERROR(ConfigError);
FOGGATE_DEFINE_ERROR(InvalidArgument);
FOGGATE_DEFINE_ERROR(InvalidIdentity);
FOGGATE_DEFINE_ERROR(DecryptionFailure);
FOGGATE_DEFINE_ERROR(CryptoError);

// ledger
FOGGATE_DEFINE_ERROR(LoadError);
FOGGATE_DEFINE_ERROR(IntegrityError);

// packet codec. Every failure to strip the outer layer is an
// OuterDecryptionError; subclasses keep the exact cause.
FOGGATE_DEFINE_ERROR(ParseError);
FOGGATE_DEFINE_ERROR(ConstructionError);
FOGGATE_DEFINE_ERROR(OuterDecryptionError);
FOGGATE_DEFINE_ERROR(InnerDecryptionError);
FOGGATE_DEFINE_ERROR(IdentityMismatch);

class VersionError : public OuterDecryptionError {
public:
  using OuterDecryptionError::OuterDecryptionError;
};

class FramingError : public OuterDecryptionError {
public:
  using OuterDecryptionError::OuterDecryptionError;
};

// nodes
FOGGATE_DEFINE_ERROR(StateError);
FOGGATE_DEFINE_ERROR(NotFound);

// transport
FOGGATE_DEFINE_ERROR(NetworkError);

#undef FOGGATE_DEFINE_ERROR

}  // namespace foggate
