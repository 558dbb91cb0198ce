// Copyright 2026 The randcorr Authors
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

// State spec mini-grammar used by the command-line tool:
//
//   bell                  |Psi+><Psi+|
//   ghz:N   w:N   dicke:N,k
//   bd:c1,c2,c3           Bell-diagonal state
//   noisyghz:N,p          p 1/2^N + (1-p)|GHZ><GHZ|
//   psitheta:N,theta      cos|0..0> + sin|1..1>
//   mixed | mixed:N       maximally mixed (default N = 2)
//   file:path.json        {"nqubits": N, "data": [[re, im], ...]}

#include <optional>
#include <string>

#include "randcorr/qcore.hpp"

namespace randcorr::cli {

struct ParsedState {
  DensityMatrix rho;
  std::optional<BellDiagonalParams> bd;  // set for bell and bd:...
};

/// Throws randcorr::Error (Parse) on malformed specs.
ParsedState parse_state_spec(const std::string& spec);

}  // namespace randcorr::cli
