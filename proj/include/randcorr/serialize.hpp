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

// JSON forms of states and designs.
//
//   state:  {"nqubits": N, "data": [[re, im], ...]}   (row-major, 4^N pairs)
//   design: {"name": s, "strength": t, "kind": "spherical", "points": [[x, y, z], ...]}
//           {"name": s, "strength": t, "kind": "unitary",
//            "unitaries": [[[re, im] x 4], ...]}          (row-major 2x2)

#include <filesystem>
#include <variant>

#include <nlohmann/json.hpp>

#include "randcorr/designs.hpp"
#include "randcorr/qcore.hpp"

namespace randcorr {

nlohmann::json to_json(const DensityMatrix& rho);
/// Validates the state (see DensityMatrix); throws Parse on malformed input.
DensityMatrix density_matrix_from_json(const nlohmann::json& j);
DensityMatrix load_density_matrix(const std::filesystem::path& path);

nlohmann::json to_json(const SphericalDesign& design);
nlohmann::json to_json(const UnitaryDesign& design);

using AnyDesign = std::variant<SphericalDesign, UnitaryDesign>;

/// Parses a design without verifying it.
AnyDesign design_from_json(const nlohmann::json& j);

/// Spherical designs must pass verify_spherical_design at their declared
/// strength (1e-10); unitary designs must be unitary, free of phase
/// duplicates, and project to a spherical design of the declared strength.
/// Throws VerificationFailure otherwise.
void verify_design(const AnyDesign& design);

/// Parses and verifies. Throws Parse or VerificationFailure.
AnyDesign load_design(const std::filesystem::path& path);
void save_design(const AnyDesign& design, const std::filesystem::path& path);

/// The spherical design carried by `design` (projected for unitary designs).
SphericalDesign as_spherical(const AnyDesign& design);

}  // namespace randcorr
