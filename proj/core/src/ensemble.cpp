#include "eigengeo/ensemble.hpp"

#include <cmath>
#include <numbers>

namespace eigengeo {

OrthogonalEnsemble o2_equidistant(int k) {
  if (k < 2) throw DomainError("o2_equidistant: need at least 2 points, got " + std::to_string(k));
  OrthogonalEnsemble ens;
  ens.dim = 2;
  ens.kind = EnsembleKind::kEquidistantO2;
  ens.matrices.reserve(k);
  for (int i = 0; i < k; ++i) {
    ens.matrices.push_back(rotation2(std::numbers::pi * i / k));
  }
  ens.weights.assign(k, 1.0 / k);
  return ens;
}

namespace {

Matrix haar_member(int p, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix g(p, p);
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < p; ++i) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(p, p);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < p; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace

OrthogonalEnsemble haar_sample(int p, int m, Rng& rng) {
  if (p < 1 || m < 1) throw DomainError("haar_sample: need p >= 1 and m >= 1");
  OrthogonalEnsemble ens;
  ens.dim = p;
  ens.kind = EnsembleKind::kHaarMonteCarlo;
  ens.matrices.reserve(m);
  for (int i = 0; i < m; ++i) ens.matrices.push_back(haar_member(p, rng));
  ens.weights.assign(m, 1.0 / m);
  return ens;
}

OrthogonalEnsemble haar_sample(int p, int m, std::uint64_t seed) {
  if (p < 1 || m < 1) throw DomainError("haar_sample: need p >= 1 and m >= 1");
  OrthogonalEnsemble ens;
  ens.dim = p;
  ens.kind = EnsembleKind::kHaarMonteCarlo;
  ens.matrices.reserve(m);
  for (int i = 0; i < m; ++i) {
    Rng rng = make_rng({seed, streams::kHaar, static_cast<std::uint64_t>(i)});
    ens.matrices.push_back(haar_member(p, rng));
  }
  ens.weights.assign(m, 1.0 / m);
  return ens;
}

EnsembleSpec EnsembleSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw DomainError("ensemble must look like equidistant:K or haar:m, got '" + text + "'");
  }
  const std::string kind = text.substr(0, colon);
  int size = 0;
  try {
    std::size_t used = 0;
    size = std::stoi(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw DomainError("ensemble size is not an integer in '" + text + "'");
  }
  EnsembleSpec spec;
  spec.size = size;
  if (kind == "equidistant") {
    spec.kind = EnsembleKind::kEquidistantO2;
    if (size < 2) throw DomainError("equidistant ensemble needs K >= 2");
  } else if (kind == "haar") {
    spec.kind = EnsembleKind::kHaarMonteCarlo;
    if (size < 1) throw DomainError("haar ensemble needs m >= 1");
  } else {
    throw DomainError("unknown ensemble kind '" + kind + "'");
  }
  return spec;
}

std::string EnsembleSpec::to_string() const {
  return (kind == EnsembleKind::kEquidistantO2 ? "equidistant:" : "haar:") + std::to_string(size);
}

OrthogonalEnsemble make_ensemble(const EnsembleSpec& spec, int p, std::uint64_t seed) {
  if (spec.kind == EnsembleKind::kEquidistantO2) {
    if (p != 2) throw DomainError("equidistant ensemble is only defined for p = 2");
    return o2_equidistant(spec.size);
  }
  return haar_sample(p, spec.size, seed);
}

EnsembleSpec default_estimation_ensemble(int p) {
  return p == 2 ? EnsembleSpec{EnsembleKind::kEquidistantO2, 50}
                : EnsembleSpec{EnsembleKind::kHaarMonteCarlo, 4096};
}

EnsembleSpec default_density_ensemble(int p) {
  return p == 2 ? EnsembleSpec{EnsembleKind::kEquidistantO2, 100}
                : EnsembleSpec{EnsembleKind::kHaarMonteCarlo, 8192};
}

}  // namespace eigengeo
