#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mproj/pipeline.hpp"

namespace mproj {

struct ManifestEntry {
  std::string id;
  int label = 1;
};

/// Reads `id,label` CSV. Labels are benign/malignant (-1/+1) or literal
/// -1/+1.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path, const std::vector<ManifestEntry>& entries);

/// Image file for a manifest id: the id itself, else id + .pgm / .png.
std::filesystem::path resolve_image(const std::filesystem::path& dir, const std::string& id);

/// Loads every manifest image, resizing to rows x cols where needed.
Dataset load_dataset(const std::filesystem::path& dir, const std::filesystem::path& manifest, Eigen::Index rows,
                     Eigen::Index cols);

}  // namespace mproj
