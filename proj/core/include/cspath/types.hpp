#pragma once

#include <Eigen/Dense>

namespace cspath {

// Dense matrices are stored row-major so that serialized payloads and the
// in-memory layout agree.
using DenseMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

inline bool all_finite(const DenseMatrix& a) { return a.allFinite(); }
inline bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace cspath
