#include "mproj/dataset_io.hpp"

#include <fstream>

#include "mproj/image_io.hpp"

namespace mproj {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

int parse_label(const std::string& text, const std::string& where) {
  if (text == "malignant" || text == "1" || text == "+1") return 1;
  if (text == "benign" || text == "-1") return -1;
  throw InputError(where + ": unknown label '" + text + "' (expected benign/malignant or -1/+1)");
}

}  // namespace

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  std::string line;
  if (!std::getline(in, line) || trim(line) != "id,label") {
    throw InputError(path.string() + ": manifest must start with header 'id,label'");
  }
  std::vector<ManifestEntry> entries;
  for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.rfind(',');
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (comma == std::string::npos) throw InputError(where + ": expected 'id,label'");
    ManifestEntry e{trim(line.substr(0, comma)), parse_label(trim(line.substr(comma + 1)), where)};
    if (e.id.empty()) throw InputError(where + ": empty id");
    entries.push_back(std::move(e));
  }
  return entries;
}

void write_manifest(const std::filesystem::path& path, const std::vector<ManifestEntry>& entries) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "id,label\n";
  for (const auto& e : entries) out << e.id << ',' << (e.label == 1 ? "1" : "-1") << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

std::filesystem::path resolve_image(const std::filesystem::path& dir, const std::string& id) {
  for (const char* ext : {"", ".pgm", ".png"}) {
    const auto p = dir / (id + ext);
    if (std::filesystem::is_regular_file(p)) return p;
  }
  throw IoError("no image file for id '" + id + "' under " + dir.string());
}

Dataset load_dataset(const std::filesystem::path& dir, const std::filesystem::path& manifest, Eigen::Index rows,
                     Eigen::Index cols) {
  Dataset ds;
  ds.rows = rows;
  ds.cols = cols;
  for (const auto& e : read_manifest(manifest)) {
    ds.samples.push_back(Sample{resize_bilinear(read_image(resolve_image(dir, e.id)), rows, cols), e.label, e.id});
  }
  if (ds.samples.empty()) throw InputError(manifest.string() + ": manifest lists no samples");
  return ds;
}

}  // namespace mproj
