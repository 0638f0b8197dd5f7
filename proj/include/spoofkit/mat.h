// spoofkit/mat.h

// Copyright 2026  Spoofkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SPOOFKIT_MAT_H_
#define SPOOFKIT_MAT_H_

#include <cstddef>
#include <span>
#include <vector>

namespace spoofkit {

/// Dense row-major matrix of doubles. Dimensions are fixed at construction.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

  double &operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return a[i * cols + j];
  }

  std::span<double> Row(std::size_t i) { return {a.data() + i * cols, cols}; }
  std::span<const double> Row(std::size_t i) const {
    return {a.data() + i * cols, cols};
  }
};

/// y = M x
inline void MatVec(const Mat &m, std::span<const double> x,
                   std::span<double> y) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    double acc = 0.0;
    const double *row = m.a.data() + i * m.cols;
    for (std::size_t j = 0; j < m.cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

/// y += M^T x
inline void MatTVecAdd(const Mat &m, std::span<const double> x,
                       std::span<double> y) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    const double *row = m.a.data() + i * m.cols;
    double xi = x[i];
    for (std::size_t j = 0; j < m.cols; ++j) y[j] += row[j] * xi;
  }
}

/// M += u v^T
inline void OuterAdd(Mat *m, std::span<const double> u,
                     std::span<const double> v) {
  for (std::size_t i = 0; i < m->rows; ++i) {
    double *row = m->a.data() + i * m->cols;
    double ui = u[i];
    for (std::size_t j = 0; j < m->cols; ++j) row[j] += ui * v[j];
  }
}

inline double Dot(std::span<const double> x, std::span<const double> y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

}  // namespace spoofkit

#endif  // SPOOFKIT_MAT_H_
