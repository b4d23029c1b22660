// SPDX-License-Identifier: Apache-2.0
//
// umic - UM-MIMO channel synthesis, sounding emulation and characterization
// Copyright (C) 2025-2026 The umic authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "umic/geometry.hpp"
#include "umic/scenario.hpp"

namespace umic {

// Array geometry by construction recipe, as persisted in manifests.
struct GeometryRef {
  std::string kind = "ula"; // ula | l_shaped_ula | planar | quad_panel
  std::size_t n = 0;
  std::size_t rows = 0, cols = 0; // planar only
  double spacing_m = kDefaultSpacing15GHz;
  double bearing_rad = 0.0;
  double tilt_rad = 0.0;
  Vec3 origin{};

  ArrayGeometry build() const;
};

struct LinkRecord {
  std::string link_id;
  ScenarioClass scenario_class = ScenarioClass::kNfLos;
  double distance_m = 0.0;
  double foliage_depth_m = 0.0;
  double carrier_hz = 15e9;
  double bandwidth_hz = 250e6;
  GeometryRef tx_geometry;
  GeometryRef rx_geometry;
  std::string tensor_blob;         // path relative to the manifest
  std::optional<std::string> mpc_list;
};

struct DatasetManifest {
  std::uint32_t format_version = 1;
  std::string provenance_kind = "synthetic"; // synthetic | external
  std::string provenance_note;
  std::uint64_t seed = 0;
  std::vector<LinkRecord> links;

  // Unique link ids and resolvable blob references.
  void validate(const std::string &base_dir) const;
};

void save_manifest(const std::string &path, const DatasetManifest &m);
DatasetManifest load_manifest(const std::string &path);

// Builds a manifest from external tensor blobs plus a metadata CSV with
// columns link_id, scenario_class, distance_m, foliage_depth_m, carrier_hz,
// bandwidth_hz, tensor_blob. Blob headers are opened and checked; links
// whose tensor dimensions disagree with the first link are reported
// together in the thrown error.
DatasetManifest import_external(const std::string &metadata_csv,
                                const std::string &base_dir);

} // namespace umic
