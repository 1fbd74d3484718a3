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

#ifndef DKM_TESTS_TESTING_ENRON_H_
#define DKM_TESTS_TESTING_ENRON_H_

// Status-to-class maps for the two Enron email tasks.

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "dkm/graph.h"

namespace dkm::testing {

inline std::string NormalizeStatus(std::string_view status) {
  std::string out;
  for (char c : status) {
    if (c == '_' || c == '-') c = ' ';
    if (c == ' ' && (out.empty() || out.back() == ' ')) continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

// Task 1 separates top management; task 2 separates all management (the
// lawyer included) from everyone else. Unrecognized statuses yield nullopt.
inline std::optional<Label> EnronClass(std::string_view raw_status, int task) {
  static constexpr std::string_view kTop[] = {"ceo", "president", "managing director"};
  static constexpr std::string_view kManagement[] = {"director", "vice president", "manager",
                                                     "lawyer"};
  static constexpr std::string_view kStaff[] = {"employee", "trader", "other"};
  const std::string s = NormalizeStatus(raw_status);
  const auto in = [&](const auto& set) { return std::find(std::begin(set), std::end(set), s) != std::end(set); };
  if (in(kTop)) return Label::kClass1;
  if (in(kManagement)) return task == 1 ? Label::kClass2 : Label::kClass1;
  if (in(kStaff)) return Label::kClass2;
  return std::nullopt;
}

}  // namespace dkm::testing

#endif  // DKM_TESTS_TESTING_ENRON_H_
