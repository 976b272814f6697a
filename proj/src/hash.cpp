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

#include "dske/hash.hpp"

namespace dske {

namespace {

// sum_{j=1..s} c^j v_j, evaluated as c*(v_1 + c*(v_2 + ... + c*v_s)).
FieldElement poly_eval(const FieldElement& c,
                       std::span<const FieldElement> v) {
  FieldElement acc(0, c.spec());
  for (std::size_t j = v.size(); j-- > 0;) {
    acc = c * (v[j] + acc);
  }
  return acc;
}

}  // namespace

FieldElement tag_message(const MessageTagKey& key,
                         std::span<const FieldElement> msg) {
  if (msg.empty()) {
    throw std::invalid_argument("message tag requires length >= 1");
  }
  return key.d + poly_eval(key.c, msg);
}

FieldElement tag_secret(const SecretTagKey& key,
                        std::span<const FieldElement> secret) {
  if (secret.empty()) {
    throw std::invalid_argument("secret tag requires length >= 1");
  }
  return key.d + key.c * (key.e + poly_eval(key.c, secret));
}

}  // namespace dske
