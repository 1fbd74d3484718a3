/*
 * Copyright 2026 The DKM Authors.
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

#ifndef DKM_SRC_TEXT_FORMAT_H_
#define DKM_SRC_TEXT_FORMAT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dkm::text {

std::string_view Trim(std::string_view s);
std::vector<std::string_view> Split(std::string_view s, char sep);
std::vector<std::string_view> SplitWhitespace(std::string_view s);

// Full-token parses; trailing garbage fails.
std::optional<double> ParseDouble(std::string_view s);
std::optional<std::int64_t> ParseInt(std::string_view s);

// printf("%.<digits>g").
std::string FormatDouble(double value, int significant_digits);

}  // namespace dkm::text

#endif  // DKM_SRC_TEXT_FORMAT_H_
