#pragma once

// Weighted point sets on the orthogonal group O(p) used as quadrature for
// integrals against the Haar probability measure.

#include <cstdint>
#include <string>
#include <vector>

#include "eigengeo/random.hpp"
#include "eigengeo/spd_manifold.hpp"

namespace eigengeo {

enum class EnsembleKind { kEquidistantO2, kHaarMonteCarlo };

struct OrthogonalEnsemble {
  int dim = 0;
  std::vector<Matrix> matrices;
  std::vector<double> weights;  // non-negative, sum to 1
  EnsembleKind kind = EnsembleKind::kEquidistantO2;

  std::size_t size() const { return matrices.size(); }
};

// Rotations R(k pi / K), k = 0..K-1, with uniform weights.
//
// Every integrand used here depends on Gamma only through the conjugation
// Gamma^T D Gamma of a diagonal D. R(t + pi) = -R(t) gives the same
// conjugation, and a reflection R(t) diag(1, -1) gives the same diagonal of
// Gamma^T D Gamma and the same tr(D1 Gamma^T D2 Gamma) as R(t). Rotations over
// [0, pi) therefore integrate all of O(2) for these integrands, and the rule
// is exact for trigonometric polynomials in 2t of degree < K.
OrthogonalEnsemble o2_equidistant(int k);

// m independent Haar-distributed orthogonal matrices: QR of a standard
// Gaussian matrix with the signs of R's diagonal made positive.
OrthogonalEnsemble haar_sample(int p, int m, Rng& rng);
// Member i is drawn from the stream (seed, streams::kHaar, i).
OrthogonalEnsemble haar_sample(int p, int m, std::uint64_t seed);

// Textual ensemble choice: "equidistant:K" or "haar:m".
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::kEquidistantO2;
  int size = 50;

  static EnsembleSpec parse(const std::string& text);
  std::string to_string() const;
};

// Builds the ensemble; Haar members use `seed`. Equidistant requires p = 2.
OrthogonalEnsemble make_ensemble(const EnsembleSpec& spec, int p, std::uint64_t seed);

// Defaults: equidistant:50 for p = 2, haar:4096 otherwise.
EnsembleSpec default_estimation_ensemble(int p);
// Defaults for the eigenvalue density: equidistant:100 for p = 2, haar:8192 otherwise.
EnsembleSpec default_density_ensemble(int p);

}  // namespace eigengeo
