#pragma once

#include <Eigen/SVD>

#include "enscon/bracket_words.hpp"
#include "enscon/ensemble.hpp"

namespace enscon {

// Numerical-rank certificate for the evaluation map E_gamma(Y) = (Y(x^1), ...,
// Y(x^N)) restricted to bracket words of bounded length. Full rank N * dim(M)
// certifies bracket generation at the ensemble.
struct RankReport {
  int ensemble_size = 0;
  int manifold_dim = 0;
  int depth = 0;
  int words_evaluated = 0;
  int rank = 0;
  double sigma_max = 0.0;
  double threshold = 0.0;

  int target_rank() const { return ensemble_size * manifold_dim; }
  bool full_rank() const { return rank == target_rank(); }
};

inline RankReport evaluation_rank(const ControlFamily& family, const Ensemble& ensemble,
                                  int depth) {
  if (!(ensemble.manifold == family.manifold()))
    throw std::invalid_argument("evaluation_rank: ensemble on the wrong manifold");
  const auto words = enumerate_bracket_words(family.control_count(), depth);
  const int N = ensemble.size();
  const int amb = family.ambient_dim();

  Mat E(static_cast<int>(words.size()), N * amb);
  for (std::size_t w = 0; w < words.size(); ++w) {
    const FieldAny field = words[w].resolve(family);
    for (int k = 0; k < N; ++k)
      E.row(static_cast<int>(w)).segment(k * amb, amb) = field.value(ensemble.points[k]);
  }

  Eigen::JacobiSVD<Mat> svd(E);
  const auto& sv = svd.singularValues();
  RankReport rep;
  rep.ensemble_size = N;
  rep.manifold_dim = family.manifold().dim();
  rep.depth = depth;
  rep.words_evaluated = static_cast<int>(words.size());
  rep.sigma_max = sv.size() ? sv[0] : 0.0;
  rep.threshold = tol::kRankThreshold * rep.sigma_max;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > rep.threshold) ++rep.rank;
  return rep;
}

}  // namespace enscon
