/*
 * Copyright 2026 The DKM Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DKM_KERNEL_H_
#define DKM_KERNEL_H_

#include <iosfwd>
#include <span>
#include <vector>

#include "dkm/graph.h"

namespace dkm {

// Smallest bandwidth accepted by the Gaussian step.
inline constexpr double kMinBandwidth = 1e-12;

// Squared feature distances in [-kDistanceClampTolerance, 0) are clamped to
// zero; anything more negative means the kernel is not PSD.
inline constexpr double kDistanceClampTolerance = 1e-10;

struct KernelProvenance {
  int level = 0;
  double beta = 0.0;
  // h(F), h(F^2), ... in the order they were applied; size() == level for
  // kernels built by Deepen from a diffusion kernel.
  std::vector<double> bandwidths;

  friend bool operator==(const KernelProvenance&, const KernelProvenance&) = default;
};

// Symmetric similarity matrix tagged with how it was built. The constructor
// mirrors the upper triangle into the lower one so storage is exactly
// symmetric.
class KernelMatrix {
 public:
  KernelMatrix(Matrix values, KernelProvenance provenance);

  const Matrix& matrix() const { return values_; }
  const KernelProvenance& provenance() const { return provenance_; }
  int size() const { return static_cast<int>(values_.rows()); }
  double operator()(int i, int j) const { return values_(i, j); }

 private:
  Matrix values_;
  KernelProvenance provenance_;
};

// Pairwise distances between the implicit feature images of a kernel.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(Matrix values) : values_(std::move(values)) {}
  const Matrix& matrix() const { return values_; }
  int size() const { return static_cast<int>(values_.rows()); }
  double operator()(int i, int j) const { return values_(i, j); }

 private:
  Matrix values_;
};

struct SpectralDecomposition {
  Matrix eigenvectors;  // columns
  Vector eigenvalues;   // ascending
};

// Eigendecomposition of (M + M^T) / 2. Throws on non-finite input.
SpectralDecomposition SpectralDecompose(const Matrix& m);

// exp(-beta L) = U diag(exp(-beta s)) U^T. beta == 0 yields the identity
// exactly. Works for any symmetric L (e.g. a similarity-derived Laplacian).
KernelMatrix DiffusionKernel(const Matrix& laplacian, double beta);
KernelMatrix DiffusionKernel(const LaplacianMatrix& laplacian, double beta);

// d(i, j) = sqrt(K(i,i) - 2 K(i,j) + K(j,j)).
DistanceMatrix FeatureDistance(const KernelMatrix& kernel);

enum class BandwidthDomain { kAllNodes, kObservedOnly };

// Average pairwise distance over all ordered pairs, diagonal included:
// h = (1/n^2) sum_i sum_j D(i,j). With `subset`, the average runs over
// ordered pairs of subset nodes only. Throws a degeneracy error when
// h <= kMinBandwidth.
double BandwidthHeuristic(const DistanceMatrix& distances);
double BandwidthHeuristic(const DistanceMatrix& distances,
                          std::span<const int> subset);

// K'(i,j) = exp(-(K(i,i) - 2K(i,j) + K(j,j)) / (2 h^2)) / (sqrt(2 pi) h).
// The diagonal equals 1 / (sqrt(2 pi) h) exactly.
KernelMatrix GaussianStep(const KernelMatrix& kernel, double bandwidth);

struct DeepenOptions {
  BandwidthDomain domain = BandwidthDomain::kAllNodes;
  // Node indices the bandwidth is averaged over for kObservedOnly.
  std::span<const int> observed;
};

// Applies `levels` rounds of distance -> bandwidth -> Gaussian step.
// Deepen(k, 0) returns `k` unchanged, and
// Deepen(k, a + b) == Deepen(Deepen(k, a), b) bit for bit.
KernelMatrix Deepen(const KernelMatrix& kernel, int levels,
                    const DeepenOptions& options = {});

// Dense CSV with a leading provenance line:
//   # level=<int> beta=<real> bandwidths=<h1;h2;...>
// followed by n rows of n comma-separated values, 17 significant digits.
void WriteKernelCsv(std::ostream& out, const KernelMatrix& kernel);
KernelMatrix ReadKernelCsv(std::istream& in, std::string_view source = "<stream>");

}  // namespace dkm

#endif  // DKM_KERNEL_H_
