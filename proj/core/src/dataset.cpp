#include "cspath/dataset.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cspath/rng.hpp"

namespace cspath {

namespace {

Field normalize_field(DenseMatrix values) {
  if (values.size() == 0) throw std::runtime_error("field: empty grid");
  if (!values.allFinite()) throw std::runtime_error("field: non-finite cell");
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  if (hi > lo)
    values = (values.array() - lo) / (hi - lo);
  else
    values.setZero();
  Field f;
  f.height = int(values.rows());
  f.width = int(values.cols());
  f.values = std::move(values);
  return f;
}

int read_pgm_token(std::istream& in) {
  // Skips whitespace and '#' comment lines, per the netpbm header grammar.
  while (true) {
    int c = in.peek();
    if (c == EOF) throw std::runtime_error("pgm: truncated header");
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    if (c == '#') {
      std::string line;
      std::getline(in, line);
      continue;
    }
    break;
  }
  int value;
  if (!(in >> value)) throw std::runtime_error("pgm: bad header value");
  return value;
}

}  // namespace

Field make_field(DenseMatrix values) { return normalize_field(std::move(values)); }

Field load_field_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t pos = 0;
      double v;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw std::runtime_error("csv: unparsable cell '" + cell + "'");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("csv: ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().empty())
    throw std::runtime_error("csv: empty grid");
  DenseMatrix values(Eigen::Index(rows.size()), Eigen::Index(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      values(Eigen::Index(r), Eigen::Index(c)) = rows[r][c];
  return normalize_field(std::move(values));
}

Field load_field_pgm(std::istream& in) {
  char m0 = 0, m1 = 0;
  in.get(m0);
  in.get(m1);
  if (m0 != 'P' || (m1 != '2' && m1 != '5'))
    throw std::runtime_error("pgm: not a P2/P5 file");
  const bool binary = m1 == '5';
  const int width = read_pgm_token(in);
  const int height = read_pgm_token(in);
  const int maxval = read_pgm_token(in);
  if (width < 1 || height < 1 || maxval < 1 || maxval > 65535)
    throw std::runtime_error("pgm: bad dimensions or maxval");

  DenseMatrix values(height, width);
  if (binary) {
    in.get();  // single whitespace after maxval
    const bool wide = maxval > 255;
    for (int r = 0; r < height; ++r)
      for (int c = 0; c < width; ++c) {
        int v;
        if (wide) {
          const int hi = in.get(), lo = in.get();
          if (hi == EOF || lo == EOF) throw std::runtime_error("pgm: truncated");
          v = (hi << 8) | lo;
        } else {
          v = in.get();
          if (v == EOF) throw std::runtime_error("pgm: truncated");
        }
        values(r, c) = v;
      }
  } else {
    for (int r = 0; r < height; ++r)
      for (int c = 0; c < width; ++c) {
        int v;
        if (!(in >> v)) throw std::runtime_error("pgm: truncated");
        values(r, c) = v;
      }
  }
  return normalize_field(std::move(values));
}

Field load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open field file: " + path);
  const int c0 = in.peek();
  if (c0 == 'P') {
    // Disambiguate from CSV by the full magic ("P2"/"P5" then whitespace).
    char magic[2] = {0, 0};
    in.read(magic, 2);
    in.seekg(0);
    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5'))
      return load_field_pgm(in);
  }
  return load_field_csv(in);
}

std::vector<DenseMatrix> extract_patches(const Field& field, int window,
                                         int stride) {
  if (window < 1 || stride < 1)
    throw std::invalid_argument("extract_patches: window/stride must be >= 1");
  if (window > field.height || window > field.width)
    throw std::invalid_argument("extract_patches: window larger than field");
  const int rows = (field.height - window) / stride + 1;
  const int cols = (field.width - window) / stride + 1;
  std::vector<DenseMatrix> patches;
  patches.reserve(std::size_t(rows) * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      patches.push_back(
          field.values.block(r * stride, c * stride, window, window));
  return patches;
}

DenseMatrix downsample(const DenseMatrix& patch, int factor) {
  if (factor < 1) throw std::invalid_argument("downsample: factor < 1");
  if (patch.rows() % factor != 0 || patch.cols() % factor != 0)
    throw std::invalid_argument("downsample: window not divisible by factor");
  const Eigen::Index rows = patch.rows() / factor;
  const Eigen::Index cols = patch.cols() / factor;
  DenseMatrix out(rows, cols);
  const double inv = 1.0 / (double(factor) * factor);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      out(r, c) = patch.block(r * factor, c * factor, factor, factor).sum() * inv;
  return out;
}

Vector flatten(const DenseMatrix& patch) {
  Vector v(patch.size());
  Eigen::Index i = 0;
  for (Eigen::Index r = 0; r < patch.rows(); ++r)
    for (Eigen::Index c = 0; c < patch.cols(); ++c) v[i++] = patch(r, c);
  return v;
}

Eigen::Index PatchDataset::count(Split s) const {
  Eigen::Index n = 0;
  for (auto a : assignment)
    if (a == s) ++n;
  return n;
}

DenseMatrix PatchDataset::subset(Split s) const {
  DenseMatrix out(count(s), patches.cols());
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] == s) out.row(row++) = patches.row(Eigen::Index(i));
  return out;
}

PatchDataset split(const DenseMatrix& patches, int patch_side,
                   const SplitFractions& fractions, std::uint64_t seed,
                   SplitMode mode) {
  const Eigen::Index n = patches.rows();
  if (n == 0) throw std::invalid_argument("split: empty patch list");
  const double total = fractions.train + fractions.valid + fractions.test;
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("split: fractions must sum to 1");
  if (Eigen::Index(patch_side) * patch_side != patches.cols())
    throw std::invalid_argument("split: patch length != side^2");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  if (mode == SplitMode::random) {
    SplitMix64 rng(seed);
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng.next_below(i)]);
  }

  const auto n_train = Eigen::Index(std::floor(fractions.train * double(n)));
  const auto n_valid = Eigen::Index(std::floor(fractions.valid * double(n)));

  PatchDataset ds;
  ds.patch_side = patch_side;
  ds.patches = patches;
  ds.seed = seed;
  ds.assignment.assign(std::size_t(n), Split::test);
  for (Eigen::Index i = 0; i < n_train; ++i)
    ds.assignment[std::size_t(order[std::size_t(i)])] = Split::train;
  for (Eigen::Index i = n_train; i < n_train + n_valid; ++i)
    ds.assignment[std::size_t(order[std::size_t(i)])] = Split::valid;
  return ds;
}

PatchDataset build_dataset(const Field& field, int window, int stride,
                           int factor, const SplitFractions& fractions,
                           std::uint64_t seed, SplitMode mode) {
  const auto raw = extract_patches(field, window, stride);
  if (window % factor != 0)
    throw std::invalid_argument("build_dataset: window not divisible by factor");
  const int side = window / factor;
  DenseMatrix flat(Eigen::Index(raw.size()), Eigen::Index(side) * side);
  for (std::size_t i = 0; i < raw.size(); ++i)
    flat.row(Eigen::Index(i)) = flatten(downsample(raw[i], factor)).transpose();
  return split(flat, side, fractions, seed, mode);
}

}  // namespace cspath
