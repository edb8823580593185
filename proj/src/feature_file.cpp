#include "mproj/feature_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace mproj {

static_assert(std::numeric_limits<double>::is_iec559, "feature files store IEEE-754 doubles");

namespace {

class Writer {
 public:
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  template <typename T>
  void le(T value) {
    using U = std::make_unsigned_t<T>;
    U u = static_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      out_.push_back(std::uint8_t(u & 0xff));
      u = U(u >> 8);
    }
  }
  void f64(double v) { le(std::bit_cast<std::uint64_t>(v)); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& in) : in_(in) {}
  const std::uint8_t* bytes(std::size_t n) {
    if (in_.size() - pos_ < n) throw IoError("feature file truncated");
    const auto* p = in_.data() + pos_;
    pos_ += n;
    return p;
  }
  template <typename T>
  T le() {
    using U = std::make_unsigned_t<T>;
    const auto* p = bytes(sizeof(T));
    U u = 0;
    for (std::size_t i = sizeof(T); i-- > 0;) u = U((u << 8) | p[i]);
    return static_cast<T>(u);
  }
  double f64() { return std::bit_cast<double>(le<std::uint64_t>()); }
  bool done() const { return pos_ == in_.size(); }

 private:
  const std::vector<std::uint8_t>& in_;
  std::size_t pos_ = 0;
};

constexpr DescriptorKind kTagOrder[] = {DescriptorKind::mlbp, DescriptorKind::mhog, DescriptorKind::dmp,
                                        DescriptorKind::mlbp_hog, DescriptorKind::lbp_ref};

}  // namespace

std::uint32_t descriptor_tag(DescriptorKind kind) {
  for (std::uint32_t i = 0; i < std::size(kTagOrder); ++i) {
    if (kTagOrder[i] == kind) return i;
  }
  throw ConfigError("unknown descriptor");
}

std::vector<std::uint8_t> encode_features(const FeatureMatrix& fm) {
  if (fm.labels.size() != std::size_t(fm.size()) || fm.ids.size() != std::size_t(fm.size())) {
    throw InputError("encode_features: labels/ids do not match the sample count");
  }
  Writer w;
  w.bytes("MPFV", 4);
  w.le<std::uint32_t>(kFeatureFileVersion);
  w.le<std::uint32_t>(descriptor_tag(fm.descriptor));
  const auto& lbp = fm.config.mlbp;
  const auto& hog = fm.config.mhog;
  w.le<std::uint32_t>(std::uint32_t(lbp.neighbor_count));
  w.le<std::uint32_t>(std::uint32_t(lbp.directions.to_ulong()));
  w.le<std::uint32_t>(std::uint32_t(hog.c1));
  w.le<std::uint32_t>(std::uint32_t(hog.c2));
  w.le<std::uint32_t>(std::uint32_t(hog.v));
  w.le<std::uint32_t>(std::uint32_t(hog.b));
  w.le<std::uint32_t>(std::uint32_t(hog.effective_block_overlap()));
  w.le<std::uint32_t>(hog.normalize ? 1u : 0u);
  w.f64(hog.epsilon);
  w.le<std::uint32_t>(std::uint32_t(fm.image_rows));
  w.le<std::uint32_t>(std::uint32_t(fm.image_cols));
  w.le<std::uint64_t>(std::uint64_t(fm.size()));
  w.le<std::uint64_t>(std::uint64_t(fm.dim()));
  for (Eigen::Index i = 0; i < fm.values.size(); ++i) w.f64(fm.values.data()[i]);
  for (Eigen::Index i = 0; i < fm.size(); ++i) {
    const auto& id = fm.ids[std::size_t(i)];
    w.le<std::uint32_t>(std::uint32_t(id.size()));
    w.bytes(id.data(), id.size());
    w.le<std::int32_t>(fm.labels[std::size_t(i)]);
  }
  return w.take();
}

FeatureMatrix decode_features(const std::vector<std::uint8_t>& bytes) {
  Reader r(bytes);
  if (std::memcmp(r.bytes(4), "MPFV", 4) != 0) throw IoError("not an MPFV feature file");
  const auto version = r.le<std::uint32_t>();
  if (version != kFeatureFileVersion) throw IoError("unsupported MPFV version " + std::to_string(version));
  const auto tag = r.le<std::uint32_t>();
  if (tag >= std::size(kTagOrder)) throw IoError("unknown descriptor tag " + std::to_string(tag));

  FeatureMatrix fm;
  fm.descriptor = kTagOrder[tag];
  auto& lbp = fm.config.mlbp;
  auto& hog = fm.config.mhog;
  lbp.neighbor_count = int(r.le<std::uint32_t>());
  lbp.directions = std::bitset<8>(r.le<std::uint32_t>());
  hog.c1 = r.le<std::uint32_t>();
  hog.c2 = r.le<std::uint32_t>();
  hog.v = r.le<std::uint32_t>();
  hog.b = r.le<std::uint32_t>();
  hog.block_overlap = r.le<std::uint32_t>();
  hog.normalize = r.le<std::uint32_t>() != 0;
  hog.epsilon = r.f64();
  fm.image_rows = r.le<std::uint32_t>();
  fm.image_cols = r.le<std::uint32_t>();
  const auto count = r.le<std::uint64_t>();
  const auto dim = r.le<std::uint64_t>();
  if (dim != 0 && count > (bytes.size() / 8) / dim) throw IoError("feature file truncated");
  fm.values.resize(Eigen::Index(count), Eigen::Index(dim));
  for (Eigen::Index i = 0; i < fm.values.size(); ++i) fm.values.data()[i] = r.f64();
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto len = r.le<std::uint32_t>();
    const auto* p = r.bytes(len);
    fm.ids.emplace_back(reinterpret_cast<const char*>(p), len);
    fm.labels.push_back(r.le<std::int32_t>());
  }
  if (!r.done()) throw IoError("trailing bytes after feature file trailer");
  return fm;
}

void write_feature_file(const std::filesystem::path& path, const FeatureMatrix& fm) {
  const auto bytes = encode_features(fm);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

FeatureMatrix read_feature_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  try {
    return decode_features(bytes);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace mproj
