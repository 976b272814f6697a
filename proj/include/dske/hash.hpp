// Copyright 2026 The dske-kit Authors
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

#ifndef DSKE_HASH_HPP_
#define DSKE_HASH_HPP_

#include <span>

#include "dske/field.hpp"

namespace dske {

// One-time key for channel message tags, drawn from PSRD. Single-use
// discipline is enforced by the table layer, not here.
struct MessageTagKey {
  FieldElement c;
  FieldElement d;
};

// The 3-element prefix u of the secret tuple, keying the secret tag.
struct SecretTagKey {
  FieldElement c;
  FieldElement d;
  FieldElement e;
};

// tag = d + sum_{j=1..s} c^j v_j.  Requires s >= 1.
FieldElement tag_message(const MessageTagKey& key,
                         std::span<const FieldElement> msg);

// tag = d + c*e + sum_{j=1..m} c^{j+1} y_j.  Requires m >= 1.
FieldElement tag_secret(const SecretTagKey& key,
                        std::span<const FieldElement> secret);

}  // namespace dske

#endif  // DSKE_HASH_HPP_
