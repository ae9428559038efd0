#ifndef BRUSSELAB_TYPES_HPP
#define BRUSSELAB_TYPES_HPP

#include <complex>
#include <Eigen/Dense>

namespace brusselab {

using cplx = std::complex<double>;

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;

using Vec2d = Vec2<double>;
using Mat2d = Mat2<double>;
using Vec2c = Vec2<cplx>;
using Mat2c = Mat2<cplx>;

// Cosine coefficient table: row m holds mode m of (u1, u2).
using CoeffTable = Eigen::Matrix<double, Eigen::Dynamic, 2>;

} // namespace brusselab

#endif
