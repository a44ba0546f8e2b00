// Copyright 2026 The Authors.
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

#ifndef FAIR_KSUB_IO_H_
#define FAIR_KSUB_IO_H_

#include <cstdint>
#include <string>

namespace fair_ksub {

// Whole file as bytes. kIo if unreadable, kValidation if larger than
// max_bytes.
std::string ReadFileCapped(const std::string& path, uint64_t max_bytes);

// Writes bytes verbatim (no newline translation).
void WriteFile(const std::string& path, const std::string& contents);

}  // namespace fair_ksub

#endif  // FAIR_KSUB_IO_H_
