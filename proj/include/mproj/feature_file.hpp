#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "mproj/pipeline.hpp"

namespace mproj {

inline constexpr std::uint32_t kFeatureFileVersion = 1;

/// MPFV layout, all integers and floats little-endian:
///   "MPFV" | u32 version | u32 descriptor tag
///   config: u32 neighbor_count, u32 direction mask, u32 c1, u32 c2, u32 v,
///           u32 b, u32 block_overlap, u32 normalize, f64 epsilon,
///           u32 image_rows, u32 image_cols
///   u64 sample count | u64 dim | count*dim f64, row-major
///   per sample: u32 id byte length, id bytes, i32 label
std::vector<std::uint8_t> encode_features(const FeatureMatrix& fm);
FeatureMatrix decode_features(const std::vector<std::uint8_t>& bytes);

void write_feature_file(const std::filesystem::path& path, const FeatureMatrix& fm);
FeatureMatrix read_feature_file(const std::filesystem::path& path);

/// Stable numeric tag used in the file header.
std::uint32_t descriptor_tag(DescriptorKind kind);

}  // namespace mproj
