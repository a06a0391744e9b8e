/*
 * Copyright 2026 The Oracle Sim Authors.
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

#pragma once

#include "oracle/crypto/bytes.hpp"

namespace oracle::crypto {

// xi = SHA-256(encode_double(price) || public_key). Throws InputError for a
// non-finite price.
Digest commit(double price, ByteView public_key);

bool open_commitment(const Digest& digest, double price, ByteView public_key);

}  // namespace oracle::crypto
