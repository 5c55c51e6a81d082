// fex/matrix.h

// Copyright 2026  fex authors

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

#ifndef FEX_MATRIX_H_
#define FEX_MATRIX_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fex/common.h"

namespace fex {

// Dense row-major float matrix. Row count may be zero; column count of a
// non-empty matrix is fixed at construction.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int64_t rows, int64_t cols, float fill = 0.0f)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows * cols), fill) {
    require(rows >= 0 && cols >= 0, "Matrix: negative shape ", rows, "x", cols);
  }

  int64_t rows() const { return rows_; }
  int64_t cols() const { return cols_; }

  float& operator()(int64_t r, int64_t c) { return data_[r * cols_ + c]; }
  float operator()(int64_t r, int64_t c) const { return data_[r * cols_ + c]; }

  std::span<float> row(int64_t r) {
    return {data_.data() + r * cols_, static_cast<size_t>(cols_)};
  }
  std::span<const float> row(int64_t r) const {
    return {data_.data() + r * cols_, static_cast<size_t>(cols_)};
  }

  float* data() { return data_.data(); }
  const float* data() const { return data_.data(); }
  const std::vector<float>& values() const { return data_; }

  bool operator==(const Matrix& other) const = default;

 private:
  int64_t rows_ = 0;
  int64_t cols_ = 0;
  std::vector<float> data_;
};

enum class FeatureKind { kFbank, kPitch, kFbankPitch };

inline const char* to_string(FeatureKind k) {
  switch (k) {
    case FeatureKind::kFbank: return "fbank";
    case FeatureKind::kPitch: return "pitch";
    case FeatureKind::kFbankPitch: return "fbank+pitch";
  }
  return "?";
}

// Per-frame feature vectors (T x D) plus the metadata needed to keep
// archives and concatenation honest.
struct FeatureMatrix {
  Matrix values;
  double frame_rate = 0.0;  // frames per second
  FeatureKind kind = FeatureKind::kFbank;
  std::string utterance_id;

  int64_t num_frames() const { return values.rows(); }
  int64_t dim() const { return values.cols(); }
};

}  // namespace fex

#endif  // FEX_MATRIX_H_
