#include "cspath/dictionary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cspath/parallel.hpp"

namespace cspath {

namespace {

constexpr double kReviveNorm = 1e-12;
constexpr double kRidgeEps = 1e-8;

int side_of(Eigen::Index n) {
  const int side = static_cast<int>(std::lround(std::sqrt(double(n))));
  if (Eigen::Index(side) * side != n)
    throw std::invalid_argument("dictionary: patch length is not a square");
  return side;
}

Vector random_unit_vector(Eigen::Index n, SplitMix64& rng) {
  Vector v(n);
  double norm = 0.0;
  while (norm < kReviveNorm) {
    for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.next_gaussian();
    norm = v.norm();
  }
  return v / norm;
}

}  // namespace

DenseMatrix sparse_coding_step(const Dictionary& psi, const DenseMatrix& patches,
                               double lambda, const DictLearnOptions& opt,
                               const DenseMatrix* init) {
  if (patches.cols() != psi.signal_dim())
    throw std::invalid_argument("sparse_coding_step: patch length != N");
  const Eigen::Index n = patches.rows();
  const Eigen::Index k = psi.atom_count();
  DenseMatrix codes(k, n);
  LassoOptions lo;
  lo.max_iter = opt.ista_max_iter;
  lo.tol = opt.ista_tol;
  parallel_for(static_cast<std::size_t>(n), opt.threads, [&](std::size_t j) {
    LassoOptions local = lo;
    Vector warm;
    if (init) {
      warm = init->col(Eigen::Index(j));
      local.init = &warm;
    }
    Vector y = patches.row(Eigen::Index(j)).transpose();
    codes.col(Eigen::Index(j)) = lasso_ista(psi.atoms, y, lambda, local).coeffs;
  });
  return codes;
}

Dictionary dictionary_update_step(const DenseMatrix& codes,
                                  const DenseMatrix& patches, SplitMix64& rng) {
  if (codes.cols() != patches.rows())
    throw std::invalid_argument("dictionary_update_step: C and S disagree on n");
  const Eigen::Index k = codes.rows();
  const Eigen::Index n_signal = patches.cols();

  // Psi = S C^T (C C^T + eps I)^-1 with S holding patches as columns.
  Eigen::MatrixXd gram = codes * codes.transpose();
  gram.diagonal().array() += kRidgeEps;
  Eigen::MatrixXd cross = patches.transpose() * codes.transpose();  // N x K
  DenseMatrix atoms = gram.ldlt().solve(cross.transpose()).transpose();

  for (Eigen::Index j = 0; j < k; ++j) {
    const double norm = atoms.col(j).norm();
    if (norm < kReviveNorm)
      atoms.col(j) = random_unit_vector(n_signal, rng);
    else
      atoms.col(j) /= norm;
  }
  return Dictionary{std::move(atoms), DictionaryKind::learned,
                    side_of(n_signal)};
}

double dictionary_objective(const Dictionary& psi, const DenseMatrix& patches,
                            const DenseMatrix& codes, double lambda) {
  const DenseMatrix recon = (psi.atoms * codes).transpose();  // n x N
  return 0.5 * (recon - patches).squaredNorm() +
         lambda * codes.cwiseAbs().sum();
}

DictLearnResult learn_dictionary(const DenseMatrix& patches, int atom_count,
                                 double lambda, int epochs, std::uint64_t seed,
                                 const DictLearnOptions& opt) {
  const Eigen::Index n = patches.rows();
  const Eigen::Index n_signal = patches.cols();
  if (n == 0) throw std::invalid_argument("learn_dictionary: no training patches");
  if (atom_count < 1) throw std::invalid_argument("learn_dictionary: K < 1");
  if (epochs < 1) throw std::invalid_argument("learn_dictionary: epochs < 1");
  if (patches.cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument("learn_dictionary: all-zero training data");

  SplitMix64 rng(seed);

  // Seed atoms from training patches, sampled without replacement while they
  // last; surplus atoms start as random unit vectors.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.next_below(i)]);

  Dictionary psi;
  psi.kind = DictionaryKind::learned;
  psi.patch_side = side_of(n_signal);
  psi.atoms.resize(n_signal, atom_count);
  for (int j = 0; j < atom_count; ++j) {
    if (Eigen::Index(j) < n) {
      Vector v = patches.row(order[static_cast<std::size_t>(j)]).transpose();
      const double norm = v.norm();
      psi.atoms.col(j) =
          norm < kReviveNorm ? random_unit_vector(n_signal, rng) : Vector(v / norm);
    } else {
      psi.atoms.col(j) = random_unit_vector(n_signal, rng);
    }
  }

  DictLearnResult result;
  DenseMatrix codes;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    codes = sparse_coding_step(psi, patches, lambda, opt,
                               epoch == 0 ? nullptr : &codes);
    result.epoch_objective.push_back(
        dictionary_objective(psi, patches, codes, lambda));
    psi = dictionary_update_step(codes, patches, rng);
  }
  // Final coding pass so the reported objective matches the returned atoms.
  codes = sparse_coding_step(psi, patches, lambda, opt, &codes);
  result.epoch_objective.push_back(
      dictionary_objective(psi, patches, codes, lambda));
  result.dictionary = std::move(psi);
  return result;
}

Dictionary dct_dictionary(int patch_side) {
  if (patch_side < 1) throw std::invalid_argument("dct_dictionary: side < 1");
  const int s = patch_side;
  const double pi = 3.14159265358979323846;

  // 1D orthonormal DCT-II, rows indexed by frequency.
  Eigen::MatrixXd t(s, s);
  for (int k = 0; k < s; ++k) {
    const double scale = k == 0 ? std::sqrt(1.0 / s) : std::sqrt(2.0 / s);
    for (int n = 0; n < s; ++n)
      t(k, n) = scale * std::cos(pi * (2.0 * n + 1.0) * k / (2.0 * s));
  }

  Dictionary psi;
  psi.kind = DictionaryKind::dct;
  psi.patch_side = s;
  psi.atoms.resize(s * s, s * s);
  for (int kr = 0; kr < s; ++kr)
    for (int kc = 0; kc < s; ++kc) {
      const int atom = kr * s + kc;
      for (int r = 0; r < s; ++r)
        for (int c = 0; c < s; ++c)
          psi.atoms(r * s + c, atom) = t(kr, r) * t(kc, c);
      psi.atoms.col(atom).normalize();
    }
  return psi;
}

Dictionary polynomial_dictionary(int patch_side, int max_degree) {
  if (patch_side < 1)
    throw std::invalid_argument("polynomial_dictionary: side < 1");
  if (max_degree < 0)
    throw std::invalid_argument("polynomial_dictionary: max_degree < 0");
  const int s = patch_side;
  const Eigen::Index n_signal = Eigen::Index(s) * s;
  const Eigen::Index k =
      Eigen::Index(max_degree + 1) * (max_degree + 2) / 2;
  if (k > n_signal)
    throw std::invalid_argument(
        "polynomial_dictionary: atom count exceeds patch dimension");

  // Grid coordinate scaled to [-1, 1]; a single-cell axis sits at 0.
  auto coord = [s](int i) {
    return s == 1 ? 0.0 : -1.0 + 2.0 * i / (s - 1.0);
  };

  Dictionary psi;
  psi.kind = DictionaryKind::polynomial;
  psi.patch_side = s;
  psi.atoms.resize(n_signal, k);
  Eigen::Index atom = 0;
  for (int total = 0; total <= max_degree; ++total)
    for (int a = total; a >= 0; --a, ++atom) {
      const int b = total - a;  // x^a y^b, x along columns, y along rows
      for (int r = 0; r < s; ++r)
        for (int c = 0; c < s; ++c)
          psi.atoms(r * s + c, atom) =
              std::pow(coord(c), a) * std::pow(coord(r), b);
      const double norm = psi.atoms.col(atom).norm();
      if (norm < kReviveNorm)
        throw std::invalid_argument("polynomial_dictionary: zero atom");
      psi.atoms.col(atom) /= norm;
    }
  return psi;
}

}  // namespace cspath
