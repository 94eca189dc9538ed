// Copyright 2026 The trimcode Authors
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

#ifndef TRIMCODE_ERROR_H_
#define TRIMCODE_ERROR_H_

#include <stdexcept>
#include <string>

namespace trimcode {

// Raised for every contract violation the library detects: shape mismatches,
// invalid parameters, corrupt or truncated streams, incompatible models.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace trimcode

#endif  // TRIMCODE_ERROR_H_
