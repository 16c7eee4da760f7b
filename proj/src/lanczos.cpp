// Restarted Lanczos with full reorthogonalization and explicit deflation of
// converged vectors. Each restart keeps only the lowest Ritz vector.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "bicolor/kernels/kernels.hpp"
#include "bicolor/spectra.hpp"

namespace bicolor {

namespace {

using Vec = std::vector<double>;

void orthogonalize(Vec& w, const std::vector<Vec>& against) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : against) kernels::axpy(-kernels::dot(q, w), q, w);
  }
}

}  // namespace

EigenReport lanczos_lowest(const SparseOperator& H, int k, const SolverOptions& opt) {
  const std::size_t n = H.dim();
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (n == 0) throw std::invalid_argument("empty operator");
  if (opt.krylov_dim < 2) throw std::invalid_argument("Krylov dimension must be at least 2");

  EigenReport rep;
  rep.basis = H.basis() ? H.basis()->name() : "";
  rep.dim = n;
  rep.solver = "lanczos";

  std::mt19937_64 rng(opt.seed);
  std::vector<Vec> locked;
  std::vector<double> thetas, resids;
  Vec scratch(n), w(n);
  const double scale = std::max<double>(1.0, static_cast<double>(H.max_abs()));
  std::size_t target = std::min<std::size_t>(static_cast<std::size_t>(k), n);

  while (locked.size() < target) {
    Vec x(n);
    for (auto& v : x) v = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    orthogonalize(x, locked);
    kernels::scale(1.0 / kernels::norm2(x), x);

    double theta = 0.0, res = 0.0;
    Vec y;
    bool ok = false;
    for (int restart = 0; restart < opt.max_restarts && !ok; ++restart) {
      std::vector<Vec> V{x};
      std::vector<double> alpha, beta;
      const std::size_t room = n - locked.size();
      const int m = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(opt.krylov_dim), room));
      for (int j = 0; j < m; ++j) {
        H.apply(V[j], w);
        ++rep.iterations;
        orthogonalize(w, locked);
        alpha.push_back(kernels::dot(V[j], w));
        orthogonalize(w, V);
        const double b = kernels::norm2(w);
        if (j + 1 == m || b < 1e-12 * scale) break;
        beta.push_back(b);
        kernels::scale(1.0 / b, w);
        V.push_back(w);
      }
      const auto mm = static_cast<Eigen::Index>(alpha.size());
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(mm, mm);
      for (Eigen::Index i = 0; i < mm; ++i) {
        T(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < mm) T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
      theta = es.eigenvalues()(0);
      y.assign(n, 0.0);
      for (Eigen::Index i = 0; i < mm; ++i) kernels::axpy(es.eigenvectors()(i, 0), V[static_cast<std::size_t>(i)], y);
      orthogonalize(y, locked);
      kernels::scale(1.0 / kernels::norm2(y), y);
      H.apply(y, scratch);
      ++rep.iterations;
      theta = kernels::dot(y, scratch);
      kernels::axpy(-theta, y, scratch);
      res = kernels::norm2(scratch);
      ok = res < opt.tol;
      x = y;
    }
    if (!ok) rep.converged = false;
    locked.push_back(y);
    thetas.push_back(theta);
    resids.push_back(res);

    if (opt.resolve_ground && locked.size() == target && target < n && target < 512) {
      const double lo = *std::min_element(thetas.begin(), thetas.end());
      const bool all_ground = std::all_of(thetas.begin(), thetas.end(), [&](double t) {
        return std::abs(t - lo) <= kDegeneracyTol * std::max(1.0, std::abs(lo));
      });
      if (all_ground) ++target;
    }
  }

  std::vector<std::size_t> order(thetas.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return thetas[a] < thetas[b]; });
  for (std::size_t i : order) {
    rep.values.push_back(thetas[i]);
    rep.residuals.push_back(resids[i]);
    if (opt.keep_vectors) rep.vectors.push_back(std::move(locked[i]));
  }
  rep.levels = group_relative(rep.values, kDegeneracyTol);
  return rep;
}

}  // namespace bicolor
