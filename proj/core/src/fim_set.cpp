#include "oed/fim_set.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <cstring>
#include <memory>

#include "oed/errors.hpp"

namespace oed {

std::vector<int> GridInfo::neighbors(int linear) const {
  const int d = dims();
  std::vector<int> coord(d);
  std::uint64_t rest = static_cast<std::uint64_t>(linear);
  for (int a = 0; a < d; ++a) {
    coord[a] = static_cast<int>(rest % counts[a]);
    rest /= counts[a];
  }
  std::vector<int> out;
  out.reserve(2 * d);
  for (int a = 0; a < d; ++a) {
    std::uint64_t stride = 1;
    for (int b = 0; b < a; ++b) stride *= counts[b];
    if (coord[a] > 0) out.push_back(linear - static_cast<int>(stride));
    if (coord[a] + 1 < static_cast<int>(counts[a])) out.push_back(linear + static_cast<int>(stride));
  }
  return out;
}

FimSet::FimSet(int m, int n, WeightedCells cells)
    : m_(m), n_(n), cells_(std::move(cells)),
      data_(static_cast<std::size_t>(m) * SymMatrix::packed_size(n), 0.0) {
  assert(cells_.size() == m);
}

SymMatrix FimSet::fim(int i) const {
  SymMatrix u(n_);
  auto row = fim_row(i);
  std::copy(row.begin(), row.end(), u.packed().begin());
  return u;
}

void FimSet::set_fim(int i, const SymMatrix& u) {
  assert(u.dim() == n_);
  auto row = fim_row(i);
  std::copy(u.packed().begin(), u.packed().end(), row.begin());
}

SymMatrix FimSet::synthesize(const Eigen::VectorXd& w) const {
  assert(static_cast<int>(w.size()) == m_);
  SymMatrix acc(n_);
  double* out = acc.packed().data();
  const std::size_t len = row_len();
  for (int i = 0; i < m_; ++i) {
    const double c = cells_.volumes[i] * w[i];
    if (c == 0.0) continue;
    const double* row = data_.data() + static_cast<std::size_t>(i) * len;
    for (std::size_t k = 0; k < len; ++k) out[k] += c * row[k];
  }
  return acc;
}

Eigen::VectorXd FimSet::adjoint(const SymMatrix& p) const {
  assert(p.dim() == n_);
  // Fold the symmetric double-count into the probe vector once.
  const std::size_t len = row_len();
  std::vector<double> probe(len);
  {
    std::size_t k = 0;
    for (int i = 0; i < n_; ++i) {
      probe[k] = p.packed()[k];
      ++k;
      for (int j = i + 1; j < n_; ++j, ++k) probe[k] = 2.0 * p.packed()[k];
    }
  }
  Eigen::VectorXd out(m_);
  for (int i = 0; i < m_; ++i) {
    const double* row = data_.data() + static_cast<std::size_t>(i) * len;
    double s = 0.0;
    for (std::size_t k = 0; k < len; ++k) s += probe[k] * row[k];
    out[i] = s;
  }
  return out;
}

FimSet FimSet::subset(std::span<const int> keep) const {
  Eigen::VectorXd vols(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) vols[static_cast<int>(i)] = cells_.volumes[keep[i]];
  FimSet out(static_cast<int>(keep.size()), n_, WeightedCells(std::move(vols)));
  const std::size_t len = row_len();
  for (std::size_t i = 0; i < keep.size(); ++i) {
    auto src = fim_row(keep[i]);
    std::copy(src.begin(), src.end(),
              out.data_.begin() + static_cast<std::ptrdiff_t>(i * len));
  }
  // Grid metadata does not survive subsetting: the kept cells no longer
  // form a full tensor grid.
  return out;
}

void FimSet::validate_psd() const {
  for (int i = 0; i < m_; ++i) {
    const SpectralDecomposition eig = eigendecompose(fim(i));
    const double lmin = eig.eigenvalues[eig.eigenvalues.size() - 1];
    if (lmin < -pd_threshold(eig))
      throw Error("fim " + std::to_string(i) + " has negative eigenvalue");
  }
}

namespace {

constexpr char kMagic[4] = {'O', 'E', 'D', 'F'};
constexpr std::uint32_t kVersion = 1;

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void put_bytes(std::string& buf, const void* p, std::size_t len) {
  buf.append(static_cast<const char*>(p), len);
}

void put_u32(std::string& buf, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  put_bytes(buf, b, 4);
}

void put_u64(std::string& buf, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  put_bytes(buf, b, 8);
}

void put_f64(std::string& buf, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(buf, bits);
}

struct Reader {
  std::FILE* f;
  const std::string& path;

  void bytes(void* out, std::size_t len) {
    if (std::fread(out, 1, len, f) != len)
      throw FimFileError(FimFileError::Kind::Corrupt, path + ": truncated fim cache");
  }
  std::uint32_t u32() {
    unsigned char b[4];
    bytes(b, 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    unsigned char b[8];
    bytes(b, 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }
  double f64() {
    std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
};

}  // namespace

void save_fimset(const FimSet& fs, const std::string& path) {
  std::string buf;
  const std::size_t len = fs.row_len();
  buf.reserve(32 + static_cast<std::size_t>(fs.m()) * (len + 1) * 8);
  put_bytes(buf, kMagic, 4);
  put_u32(buf, kVersion);
  put_u64(buf, static_cast<std::uint64_t>(fs.m()));
  put_u32(buf, static_cast<std::uint32_t>(fs.n()));
  const GridInfo* grid = fs.grid() ? &*fs.grid() : nullptr;
  put_u32(buf, grid ? static_cast<std::uint32_t>(grid->dims()) : 0);
  if (grid) {
    for (int a = 0; a < grid->dims(); ++a) {
      put_u64(buf, grid->counts[a]);
      put_f64(buf, grid->axis_min[a]);
      put_f64(buf, grid->axis_max[a]);
    }
  }
  for (int i = 0; i < fs.m(); ++i) {
    put_f64(buf, fs.cells().volumes[i]);
    for (double x : fs.fim_row(i)) put_f64(buf, x);
  }

  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) throw FimFileError(FimFileError::Kind::Io, path + ": cannot open for writing");
  if (std::fwrite(buf.data(), 1, buf.size(), f.get()) != buf.size())
    throw FimFileError(FimFileError::Kind::Io, path + ": short write");
}

FimSet load_fimset(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) throw FimFileError(FimFileError::Kind::Io, path + ": cannot open");
  Reader r{f.get(), path};

  char magic[4];
  r.bytes(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw FimFileError(FimFileError::Kind::Corrupt, path + ": bad magic");
  const std::uint32_t version = r.u32();
  if (version != kVersion)
    throw FimFileError(FimFileError::Kind::VersionMismatch,
                       path + ": unsupported version " + std::to_string(version));
  const std::uint64_t m64 = r.u64();
  const std::uint32_t n = r.u32();
  const std::uint32_t d = r.u32();
  if (m64 == 0 || m64 > (1ULL << 32) || n == 0 || n > 4096 || d > 16)
    throw FimFileError(FimFileError::Kind::DimensionMismatch,
                       path + ": implausible dimensions");
  std::optional<GridInfo> grid;
  if (d > 0) {
    GridInfo g;
    for (std::uint32_t a = 0; a < d; ++a) {
      g.counts.push_back(r.u64());
      g.axis_min.push_back(r.f64());
      g.axis_max.push_back(r.f64());
    }
    if (g.cell_count() != m64)
      throw FimFileError(FimFileError::Kind::DimensionMismatch,
                         path + ": grid cell count does not match m");
    grid = std::move(g);
  }

  const int m = static_cast<int>(m64);
  Eigen::VectorXd vols(m);
  std::vector<double> rows;
  const std::size_t len = SymMatrix::packed_size(static_cast<int>(n));
  rows.resize(static_cast<std::size_t>(m) * len);
  for (int i = 0; i < m; ++i) {
    vols[i] = r.f64();
    if (!(vols[i] > 0.0))
      throw FimFileError(FimFileError::Kind::Corrupt,
                         path + ": nonpositive cell volume");
    r.bytes(rows.data() + static_cast<std::size_t>(i) * len, len * 8);
  }
  // Must now be exactly at EOF.
  char extra;
  if (std::fread(&extra, 1, 1, f.get()) == 1)
    throw FimFileError(FimFileError::Kind::Corrupt, path + ": trailing bytes");

  FimSet fs(m, static_cast<int>(n), WeightedCells(std::move(vols)));
  for (int i = 0; i < m; ++i) {
    auto dst = fs.fim_row(i);
    std::copy_n(rows.begin() + static_cast<std::ptrdiff_t>(i * len), len, dst.begin());
  }
  fs.grid() = std::move(grid);
  return fs;
}

}  // namespace oed
