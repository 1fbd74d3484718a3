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

#include "dkm/kernel.h"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "dkm/error.h"
#include "text_format.h"

namespace dkm {
namespace {

void RequireFinite(const Matrix& m, const char* what) {
  if (!m.allFinite()) ThrowDataError(std::string(what) + " has non-finite entries");
}

// K(i,i) - 2K(i,j) + K(j,j), clamped at zero within tolerance.
Matrix SquaredDistances(const Matrix& k) {
  const auto n = k.rows();
  Matrix r(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    r(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double value = k(i, i) - 2.0 * k(i, j) + k(j, j);
      if (value < 0.0) {
        if (value < -kDistanceClampTolerance) {
          ThrowDegenerate("kernel is not positive semidefinite: squared distance " +
                          text::FormatDouble(value, 6) + " between nodes " +
                          std::to_string(i) + " and " + std::to_string(j));
        }
        value = 0.0;
      }
      r(i, j) = value;
      r(j, i) = value;
    }
  }
  return r;
}

KernelMatrix GaussianFromSquared(const Matrix& squared, double bandwidth,
                                 KernelProvenance provenance) {
  if (!(bandwidth > kMinBandwidth)) {
    ThrowDegenerate("bandwidth " + text::FormatDouble(bandwidth, 6) +
                    " is degenerate (all points coincide in feature space)");
  }
  const double scale = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * bandwidth);
  const double denom = 2.0 * bandwidth * bandwidth;
  const auto n = squared.rows();
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i, i) = scale;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      out(i, j) = scale * std::exp(-squared(i, j) / denom);
    }
  }
  provenance.level += 1;
  provenance.bandwidths.push_back(bandwidth);
  return KernelMatrix(std::move(out), std::move(provenance));
}

}  // namespace

KernelMatrix::KernelMatrix(Matrix values, KernelProvenance provenance)
    : values_(std::move(values)), provenance_(std::move(provenance)) {
  if (values_.rows() != values_.cols()) ThrowDataError("kernel matrix is not square");
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) values_(i, j) = values_(j, i);
  }
}

SpectralDecomposition SpectralDecompose(const Matrix& m) {
  if (m.rows() != m.cols()) ThrowDataError("matrix to decompose is not square");
  RequireFinite(m, "matrix to decompose");
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    ThrowDegenerate("symmetric eigensolver did not converge");
  }
  return {solver.eigenvectors(), solver.eigenvalues()};
}

KernelMatrix DiffusionKernel(const Matrix& laplacian, double beta) {
  if (!std::isfinite(beta) || beta < 0.0) {
    ThrowConfigError("beta must be a finite nonnegative number");
  }
  RequireFinite(laplacian, "Laplacian");
  const auto n = laplacian.rows();
  if (beta == 0.0) {
    return KernelMatrix(Matrix::Identity(n, n), {0, 0.0, {}});
  }
  const SpectralDecomposition eig = SpectralDecompose(laplacian);
  const Vector weights = (-beta * eig.eigenvalues.array()).exp().matrix();
  Matrix k = eig.eigenvectors * weights.asDiagonal() * eig.eigenvectors.transpose();
  return KernelMatrix(std::move(k), {0, beta, {}});
}

KernelMatrix DiffusionKernel(const LaplacianMatrix& laplacian, double beta) {
  return DiffusionKernel(laplacian.matrix(), beta);
}

DistanceMatrix FeatureDistance(const KernelMatrix& kernel) {
  return DistanceMatrix(SquaredDistances(kernel.matrix()).cwiseSqrt());
}

double BandwidthHeuristic(const DistanceMatrix& distances) {
  const int n = distances.size();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) total += distances(i, j);
  }
  const double h = total / (static_cast<double>(n) * n);
  if (!(h > kMinBandwidth)) {
    ThrowDegenerate("average feature distance " + text::FormatDouble(h, 6) +
                    " is degenerate (all points coincide in feature space)");
  }
  return h;
}

double BandwidthHeuristic(const DistanceMatrix& distances, std::span<const int> subset) {
  if (subset.empty()) ThrowConfigError("bandwidth subset is empty");
  double total = 0.0;
  for (int i : subset) {
    for (int j : subset) total += distances(i, j);
  }
  const auto m = static_cast<double>(subset.size());
  const double h = total / (m * m);
  if (!(h > kMinBandwidth)) {
    ThrowDegenerate("average feature distance over observed nodes " +
                    text::FormatDouble(h, 6) + " is degenerate");
  }
  return h;
}

KernelMatrix GaussianStep(const KernelMatrix& kernel, double bandwidth) {
  return GaussianFromSquared(SquaredDistances(kernel.matrix()), bandwidth,
                             kernel.provenance());
}

KernelMatrix Deepen(const KernelMatrix& kernel, int levels, const DeepenOptions& options) {
  if (levels < 0) ThrowConfigError("level must be nonnegative");
  KernelMatrix current = kernel;
  for (int step = 1; step <= levels; ++step) {
    try {
      const Matrix squared = SquaredDistances(current.matrix());
      const DistanceMatrix distances(squared.cwiseSqrt());
      const double h = options.domain == BandwidthDomain::kObservedOnly
                           ? BandwidthHeuristic(distances, options.observed)
                           : BandwidthHeuristic(distances);
      current = GaussianFromSquared(squared, h, current.provenance());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerate) throw;
      throw Error(ErrorCode::kDegenerate,
                  "deepening step " + std::to_string(step) + " of " +
                      std::to_string(levels) + " (to level " +
                      std::to_string(current.provenance().level + 1) + "): " + e.what());
    }
  }
  return current;
}

void WriteKernelCsv(std::ostream& out, const KernelMatrix& kernel) {
  const KernelProvenance& p = kernel.provenance();
  out << "# level=" << p.level << " beta=" << text::FormatDouble(p.beta, 17)
      << " bandwidths=";
  for (std::size_t k = 0; k < p.bandwidths.size(); ++k) {
    if (k > 0) out << ';';
    out << text::FormatDouble(p.bandwidths[k], 17);
  }
  out << '\n';
  const Matrix& m = kernel.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << text::FormatDouble(m(i, j), 17);
    }
    out << '\n';
  }
}

KernelMatrix ReadKernelCsv(std::istream& in, std::string_view source) {
  const std::string where(source);
  std::string line;
  if (!std::getline(in, line) || text::Trim(line).substr(0, 1) != "#") {
    ThrowDataError(where + ": missing '#' provenance line");
  }
  KernelProvenance provenance;
  bool has_level = false;
  bool has_beta = false;
  for (auto token : text::SplitWhitespace(text::Trim(line).substr(1))) {
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) continue;
    const auto key = token.substr(0, eq);
    const auto value = token.substr(eq + 1);
    if (key == "level") {
      const auto level = text::ParseInt(value);
      if (!level || *level < 0) ThrowDataError(where + ": bad level '" + std::string(value) + "'");
      provenance.level = static_cast<int>(*level);
      has_level = true;
    } else if (key == "beta") {
      const auto beta = text::ParseDouble(value);
      if (!beta) ThrowDataError(where + ": bad beta '" + std::string(value) + "'");
      provenance.beta = *beta;
      has_beta = true;
    } else if (key == "bandwidths" && !value.empty()) {
      for (auto item : text::Split(value, ';')) {
        const auto h = text::ParseDouble(item);
        if (!h) ThrowDataError(where + ": bad bandwidth '" + std::string(item) + "'");
        provenance.bandwidths.push_back(*h);
      }
    }
  }
  if (!has_level || !has_beta) ThrowDataError(where + ": provenance needs level and beta");

  std::vector<std::vector<double>> rows;
  for (int line_no = 2; std::getline(in, line); ++line_no) {
    if (text::Trim(line).empty()) continue;
    std::vector<double> row;
    int col = 1;
    for (auto cell : text::Split(line, ',')) {
      const auto v = text::ParseDouble(cell);
      if (!v || !std::isfinite(*v)) {
        ThrowDataError(where + ":" + std::to_string(line_no) + " column " +
                       std::to_string(col) + ": cannot parse '" + std::string(cell) + "'");
      }
      row.push_back(*v);
      ++col;
    }
    rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) ThrowDataError(where + ": kernel has no rows");
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n) {
      ThrowDataError(where + ": kernel is not square");
    }
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    ThrowDataError(where + ": kernel is not symmetric");
  }
  return KernelMatrix(std::move(m), std::move(provenance));
}

}  // namespace dkm
