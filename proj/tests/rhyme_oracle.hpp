// Copyright 2026 The Rimes Authors.
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

// Reference implementation of the rhyme rules over plain ASCII strings, one
// character per segment. Kept deliberately literal: trim, mask, compare.

#ifndef RIMES_TESTS_RHYME_ORACLE_HPP_
#define RIMES_TESTS_RHYME_ORACLE_HPP_

#include <string>

namespace rimes::testing {

struct OracleRelation {
  bool full = false;
  bool assonance = false;
  bool consonance = false;
};

inline bool oracle_is_vowel(char c) { return c == 'a' || c == 'i' || c == 'o'; }

inline OracleRelation oracle_classify(std::string a, std::string b) {
  while (a.size() > b.size()) a.erase(0, 1);
  while (b.size() > a.size()) b.erase(0, 1);
  OracleRelation r;
  if (a == b) return r;

  std::string::size_type va = std::string::npos;
  std::string::size_type vb = std::string::npos;
  for (std::string::size_type i = 0; i < a.size(); ++i) {
    if (va == std::string::npos && oracle_is_vowel(a[i])) va = i;
    if (vb == std::string::npos && oracle_is_vowel(b[i])) vb = i;
  }
  if (va != std::string::npos && vb != std::string::npos) {
    const auto from = va < vb ? va : vb;
    r.full = a.substr(from) == b.substr(from);
  }

  std::string ca = a, cb = b, wa = a, wb = b;
  bool has_vowel = false;
  bool has_consonant = false;
  for (std::string* s : {&ca, &cb}) {
    for (char& c : *s) {
      if (oracle_is_vowel(c)) {
        has_vowel = true;
      } else {
        c = 'C';
      }
    }
  }
  for (std::string* s : {&wa, &wb}) {
    for (char& c : *s) {
      if (oracle_is_vowel(c)) {
        c = 'V';
      } else {
        has_consonant = true;
      }
    }
  }
  r.assonance = ca == cb && has_vowel;
  r.consonance = wa == wb && has_consonant;
  return r;
}

}  // namespace rimes::testing

#endif  // RIMES_TESTS_RHYME_ORACLE_HPP_
