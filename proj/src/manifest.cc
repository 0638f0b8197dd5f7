// src/manifest.cc

// Copyright 2026  Spoofkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "spoofkit/manifest.h"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "spoofkit/error.h"

namespace spoofkit {

using nlohmann::json;

std::string LabelName(Label label) {
  switch (label) {
    case Label::kGenuine:
      return "genuine";
    case Label::kSpoof:
      return "spoof";
    case Label::kPartial:
      return "partial";
  }
  throw Error("invalid label value");
}

Label LabelFromName(const std::string &name) {
  if (name == "genuine") return Label::kGenuine;
  if (name == "spoof") return Label::kSpoof;
  if (name == "partial") return Label::kPartial;
  throw Error("unknown label: " + name);
}

namespace {

json SpliceToJson(const SpliceRecord &rec) {
  return json{{"host_id", rec.host_id},
              {"donor_id", rec.donor_id},
              {"start_sample", rec.start_sample},
              {"length_samples", rec.length_samples},
              {"donor_offset", rec.donor_offset}};
}

SpliceRecord SpliceFromJson(const json &j) {
  SpliceRecord rec;
  rec.host_id = j.value("host_id", std::string{});
  rec.donor_id = j.at("donor_id").get<std::string>();
  rec.start_sample = j.at("start_sample").get<std::size_t>();
  rec.length_samples = j.at("length_samples").get<std::size_t>();
  rec.donor_offset = j.at("donor_offset").get<std::size_t>();
  return rec;
}

}  // namespace

Manifest LoadManifest(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest: " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception &e) {
    throw Error("manifest " + path.string() + " is not valid JSON: " +
                 e.what());
  }
  if (!doc.is_array())
    throw Error("manifest " + path.string() + " must be a JSON array");
  if (doc.empty()) throw Error("manifest " + path.string() + " is empty");

  std::filesystem::path base = path.parent_path();
  Manifest out;
  out.reserve(doc.size());
  std::unordered_set<std::string> seen;
  for (const auto &row : doc) {
    ManifestEntry e;
    try {
      e.id = row.at("id").get<std::string>();
      e.path = std::filesystem::path(row.at("path").get<std::string>());
      e.label = LabelFromName(row.at("label").get<std::string>());
      if (row.contains("num_samples"))
        e.num_samples = row.at("num_samples").get<std::size_t>();
      if (row.contains("splice")) e.splice = SpliceFromJson(row.at("splice"));
    } catch (const json::exception &ex) {
      throw Error("bad manifest row in " + path.string() + ": " + ex.what());
    }
    if (e.path.is_relative()) e.path = base / e.path;
    if (!seen.insert(e.id).second)
      throw Error("duplicate utterance id in manifest: " + e.id);
    out.push_back(std::move(e));
  }
  return out;
}

void SaveManifest(const std::filesystem::path &path, const Manifest &entries) {
  std::filesystem::path base = path.parent_path();
  json doc = json::array();
  for (const auto &e : entries) {
    json row{{"id", e.id}, {"label", LabelName(e.label)}};
    std::filesystem::path p = e.path;
    auto rel = p.lexically_proximate(base);
    if (!rel.empty() && rel.native()[0] != '.') p = rel;
    row["path"] = p.generic_string();
    if (e.num_samples) row["num_samples"] = *e.num_samples;
    if (e.splice) row["splice"] = SpliceToJson(*e.splice);
    doc.push_back(std::move(row));
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write manifest: " + path.string());
  out << doc.dump(2) << "\n";
}

}  // namespace spoofkit
