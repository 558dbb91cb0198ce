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


#include "randcorr/serialize.hpp"

#include <fstream>
#include <string>

#include "randcorr/error.hpp"

namespace randcorr {
namespace {

nlohmann::json complex_pair(const Complex& z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex parse_complex(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    raise(ErrorKind::Parse, "expected a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::Parse, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    raise(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

template <typename T>
T field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) raise(ErrorKind::Parse, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorKind::Parse, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

nlohmann::json to_json(const DensityMatrix& rho) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index r = 0; r < rho.dim(); ++r) {
    for (Eigen::Index c = 0; c < rho.dim(); ++c) data.push_back(complex_pair(rho(r, c)));
  }
  return {{"nqubits", rho.nqubits()}, {"data", std::move(data)}};
}

DensityMatrix density_matrix_from_json(const nlohmann::json& j) {
  const int n = field<int>(j, "nqubits");
  if (n < 1 || n > kMaxDenseQubits) raise(ErrorKind::Parse, "nqubits out of range");
  const auto data = field<nlohmann::json>(j, "data");
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != dim * dim) {
    raise(ErrorKind::Parse, "state data must hold 4^N complex pairs");
  }
  ComplexOperator op(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) op(r, c) = parse_complex(data[static_cast<std::size_t>(r * dim + c)]);
  }
  return DensityMatrix(std::move(op));
}

DensityMatrix load_density_matrix(const std::filesystem::path& path) {
  return density_matrix_from_json(read_json(path));
}

nlohmann::json to_json(const SphericalDesign& design) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : design.points) points.push_back({p.x, p.y, p.z});
  return {{"name", design.name}, {"strength", design.strength}, {"kind", "spherical"}, {"points", points}};
}

nlohmann::json to_json(const UnitaryDesign& design) {
  nlohmann::json unitaries = nlohmann::json::array();
  for (const auto& u : design.unitaries) {
    unitaries.push_back({complex_pair(u(0, 0)), complex_pair(u(0, 1)), complex_pair(u(1, 0)), complex_pair(u(1, 1))});
  }
  return {{"name", design.name}, {"strength", design.strength}, {"kind", "unitary"}, {"unitaries", unitaries}};
}

AnyDesign design_from_json(const nlohmann::json& j) {
  const auto name = field<std::string>(j, "name");
  const int strength = field<int>(j, "strength");
  const auto kind = field<std::string>(j, "kind");
  if (kind == "spherical") {
    SphericalDesign d{name, strength, {}};
    for (const auto& p : field<nlohmann::json>(j, "points")) {
      if (!p.is_array() || p.size() != 3) raise(ErrorKind::Parse, "points must be [x, y, z] triples");
      d.points.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
    }
    return d;
  }
  if (kind == "unitary") {
    UnitaryDesign d{name, strength, {}};
    for (const auto& u : field<nlohmann::json>(j, "unitaries")) {
      if (!u.is_array() || u.size() != 4) raise(ErrorKind::Parse, "unitaries must hold four [re, im] entries");
      Matrix2c m;
      m << parse_complex(u[0]), parse_complex(u[1]), parse_complex(u[2]), parse_complex(u[3]);
      d.unitaries.push_back(m);
    }
    return d;
  }
  raise(ErrorKind::Parse, "unknown design kind '" + kind + "'");
}

SphericalDesign as_spherical(const AnyDesign& design) {
  if (const auto* s = std::get_if<SphericalDesign>(&design)) return *s;
  return project_to_sphere(std::get<UnitaryDesign>(design));
}

void verify_design(const AnyDesign& design) {
  if (const auto* u = std::get_if<UnitaryDesign>(&design)) {
    for (std::size_t i = 0; i < u->unitaries.size(); ++i) {
      if (!is_unitary(u->unitaries[i], 1e-10)) {
        raise(ErrorKind::VerificationFailure, "element " + std::to_string(i) + " is not unitary");
      }
      for (std::size_t k = 0; k < i; ++k) {
        if (equal_up_to_phase(u->unitaries[k], u->unitaries[i])) {
          raise(ErrorKind::VerificationFailure, "elements " + std::to_string(k) + " and " + std::to_string(i) +
                                                    " differ only by a phase");
        }
      }
    }
  }
  const SphericalDesign s = as_spherical(design);
  for (const auto& p : s.points) {
    if (std::abs(p.norm() - 1.0) > 1e-12) raise(ErrorKind::VerificationFailure, "design point is not unit length");
  }
  const DesignCheck check = verify_spherical_design(s.points, s.strength);
  if (!check.passed) {
    raise(ErrorKind::VerificationFailure, "design '" + s.name + "' fails strength " + std::to_string(s.strength) +
                                              " (max deviation " + std::to_string(check.max_deviation) + ")");
  }
}

AnyDesign load_design(const std::filesystem::path& path) {
  AnyDesign d = design_from_json(read_json(path));
  verify_design(d);
  return d;
}

void save_design(const AnyDesign& design, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) raise(ErrorKind::Parse, "cannot write " + path.string());
  out << std::visit([](const auto& d) { return to_json(d); }, design).dump(2) << '\n';
}

}  // namespace randcorr
