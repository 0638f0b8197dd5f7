// spoofkit/manifest.h

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

#ifndef SPOOFKIT_MANIFEST_H_
#define SPOOFKIT_MANIFEST_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spoofkit/splice.h"

namespace spoofkit {

enum class Label { kGenuine, kSpoof, kPartial };

std::string LabelName(Label label);
Label LabelFromName(const std::string &name);

/// Partial fakes are scored and trained as the fake class.
inline bool IsFakeLabel(Label label) { return label != Label::kGenuine; }

/// One dataset row. `path` points at a WAV file or a precomputed ".lft"
/// feature file; relative paths are resolved against the manifest location
/// on load. `num_samples` and `splice` are optional ground truth.
struct ManifestEntry {
  std::string id;
  std::filesystem::path path;
  Label label = Label::kGenuine;
  std::optional<std::size_t> num_samples;
  std::optional<SpliceRecord> splice;
};

using Manifest = std::vector<ManifestEntry>;

/// Loads a JSON array of {id, path, label, num_samples?, splice?}. Relative
/// paths become absolute relative to the manifest's directory. Duplicate ids
/// are an error.
Manifest LoadManifest(const std::filesystem::path &path);

/// Writes entries as a JSON array; paths are stored relative to the manifest
/// directory when possible.
void SaveManifest(const std::filesystem::path &path, const Manifest &entries);

}  // namespace spoofkit

#endif  // SPOOFKIT_MANIFEST_H_
