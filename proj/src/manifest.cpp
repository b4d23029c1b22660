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

#include "umic/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "umic/tensor_io.hpp"

namespace umic {

using nlohmann::json;

ArrayGeometry GeometryRef::build() const {
  ArrayGeometry g;
  if (kind == "ula")
    g = make_ula(n, spacing_m);
  else if (kind == "l_shaped_ula")
    g = make_l_shaped_ula(n, spacing_m);
  else if (kind == "planar")
    g = make_planar(rows, cols, spacing_m);
  else if (kind == "quad_panel")
    g = make_quad_panel(n, spacing_m);
  else
    throw ConfigError("unknown geometry kind: " + kind);
  g.bearing_rad = bearing_rad;
  g.tilt_rad = tilt_rad;
  g.origin = origin;
  return g;
}

namespace {

json geometry_to_json(const GeometryRef &g) {
  return json{{"kind", g.kind},
              {"n", g.n},
              {"rows", g.rows},
              {"cols", g.cols},
              {"spacing_m", g.spacing_m},
              {"bearing_rad", g.bearing_rad},
              {"tilt_rad", g.tilt_rad},
              {"origin_m", {g.origin.x, g.origin.y, g.origin.z}}};
}

GeometryRef geometry_from_json(const json &j) {
  GeometryRef g;
  g.kind = j.at("kind").get<std::string>();
  g.n = j.value("n", std::size_t{0});
  g.rows = j.value("rows", std::size_t{0});
  g.cols = j.value("cols", std::size_t{0});
  g.spacing_m = j.value("spacing_m", kDefaultSpacing15GHz);
  g.bearing_rad = j.value("bearing_rad", 0.0);
  g.tilt_rad = j.value("tilt_rad", 0.0);
  if (j.contains("origin_m")) {
    const auto &o = j.at("origin_m");
    g.origin = {o.at(0).get<double>(), o.at(1).get<double>(),
                o.at(2).get<double>()};
  }
  return g;
}

} // namespace

void DatasetManifest::validate(const std::string &base_dir) const {
  std::set<std::string> ids;
  for (const LinkRecord &l : links) {
    if (l.link_id.empty())
      throw FormatError("manifest link with empty link_id");
    if (!ids.insert(l.link_id).second)
      throw FormatError("duplicate link_id '" + l.link_id + "'");
    if (!(l.distance_m > 0.0) || !(l.carrier_hz > 0.0) ||
        !(l.bandwidth_hz > 0.0) || l.foliage_depth_m < 0.0)
      throw FormatError("link '" + l.link_id + "' has invalid physical units");
    const auto blob = std::filesystem::path(base_dir) / l.tensor_blob;
    if (!std::filesystem::exists(blob))
      throw FormatError("link '" + l.link_id + "' references missing blob '" +
                        blob.string() + "'");
  }
}

void save_manifest(const std::string &path, const DatasetManifest &m) {
  json j;
  j["format_version"] = m.format_version;
  j["provenance"] = {{"kind", m.provenance_kind},
                     {"note", m.provenance_note},
                     {"seed", m.seed}};
  j["links"] = json::array();
  for (const LinkRecord &l : m.links) {
    json jl{{"link_id", l.link_id},
            {"scenario_class", to_string(l.scenario_class)},
            {"distance_m", l.distance_m},
            {"foliage_depth_m", l.foliage_depth_m},
            {"carrier_hz", l.carrier_hz},
            {"bandwidth_hz", l.bandwidth_hz},
            {"tx_geometry", geometry_to_json(l.tx_geometry)},
            {"rx_geometry", geometry_to_json(l.rx_geometry)},
            {"tensor_blob", l.tensor_blob}};
    if (l.mpc_list)
      jl["mpc_list"] = *l.mpc_list;
    j["links"].push_back(jl);
  }
  std::ofstream f(path, std::ios::trunc);
  if (!f)
    throw FormatError("cannot open '" + path + "' for writing");
  f << j.dump(2) << "\n";
}

DatasetManifest load_manifest(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw FormatError("cannot open '" + path + "'");
  json j;
  try {
    f >> j;
  } catch (const json::exception &e) {
    throw FormatError("manifest parse error: " + std::string(e.what()));
  }
  DatasetManifest m;
  m.format_version = j.value("format_version", 1u);
  if (j.contains("provenance")) {
    m.provenance_kind = j["provenance"].value("kind", "external");
    m.provenance_note = j["provenance"].value("note", "");
    m.seed = j["provenance"].value("seed", std::uint64_t{0});
  }
  for (const json &jl : j.value("links", json::array())) {
    LinkRecord l;
    l.link_id = jl.at("link_id").get<std::string>();
    l.scenario_class =
        scenario_class_from_string(jl.at("scenario_class").get<std::string>());
    l.distance_m = jl.at("distance_m").get<double>();
    l.foliage_depth_m = jl.value("foliage_depth_m", 0.0);
    l.carrier_hz = jl.at("carrier_hz").get<double>();
    l.bandwidth_hz = jl.at("bandwidth_hz").get<double>();
    if (jl.contains("tx_geometry"))
      l.tx_geometry = geometry_from_json(jl["tx_geometry"]);
    if (jl.contains("rx_geometry"))
      l.rx_geometry = geometry_from_json(jl["rx_geometry"]);
    l.tensor_blob = jl.at("tensor_blob").get<std::string>();
    if (jl.contains("mpc_list"))
      l.mpc_list = jl["mpc_list"].get<std::string>();
    m.links.push_back(std::move(l));
  }
  return m;
}

DatasetManifest import_external(const std::string &metadata_csv,
                                const std::string &base_dir) {
  std::ifstream f(metadata_csv);
  if (!f)
    throw FormatError("cannot open metadata table '" + metadata_csv + "'");

  DatasetManifest m;
  m.provenance_kind = "external";
  m.provenance_note = "imported from " + metadata_csv;

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#')
      continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      cells.push_back(cell);
    if (header.empty()) {
      header = cells;
      continue;
    }
    if (cells.size() < 7)
      throw FormatError("metadata row " + std::to_string(line_no) +
                        " has fewer than 7 columns");
    LinkRecord l;
    l.link_id = cells[0];
    l.scenario_class = scenario_class_from_string(cells[1]);
    l.distance_m = std::stod(cells[2]);
    l.foliage_depth_m = std::stod(cells[3]);
    l.carrier_hz = std::stod(cells[4]);
    l.bandwidth_hz = std::stod(cells[5]);
    l.tensor_blob = cells[6];
    m.links.push_back(std::move(l));
  }

  m.validate(base_dir); // unique ids, blobs exist, sane units

  // Open every blob header; collect links whose dimensions disagree.
  std::string dim_issues;
  std::size_t ref_dims[4] = {0, 0, 0, 0};
  for (const LinkRecord &l : m.links) {
    const auto blob = (std::filesystem::path(base_dir) / l.tensor_blob).string();
    const ChannelTensor t = load_tensor(blob, l.carrier_hz, l.bandwidth_hz);
    const std::size_t dims[4] = {t.n_snapshots(), t.n_freq(), t.n_rx(),
                                 t.n_tx()};
    if (ref_dims[0] == 0) {
      std::copy(dims, dims + 4, ref_dims);
    } else if (!std::equal(dims, dims + 4, ref_dims)) {
      dim_issues += (dim_issues.empty() ? "" : ", ") + l.link_id;
    }
  }
  if (!dim_issues.empty())
    throw FormatError("links with inconsistent tensor dimensions: " +
                      dim_issues);
  return m;
}

} // namespace umic
