#ifndef BRUSSELAB_MODEL_HPP
#define BRUSSELAB_MODEL_HPP

#include "brusselab/types.hpp"

namespace brusselab {

struct ModelParams {
    double a = 2.0;
    double d1 = 4.0;
    double d2 = 16.0;
};

// Brusselator shifted so that the equilibrium (a, beta/a) sits at the origin,
// with bifurcation parameter b = beta - 4. The reaction is
//   f1 = (beta-1) u1 + a^2 u2 + (beta/a) u1^2 + 2a u1 u2 + u1^2 u2
//   f2 = -beta u1 - a^2 u2 - (beta/a) u1^2 - 2a u1 u2 - u1^2 u2
// and splits exactly as f(u) = J(0) u + n2(u,u) + n3(u,u,u).
class RDModel {
public:
    explicit RDModel(const ModelParams& p);

    const ModelParams& params() const { return p_; }
    Mat2d diffusion() const { return Mat2d(Eigen::Vector2d(p_.d1, p_.d2).asDiagonal()); }
    double beta(double b) const { return 4.0 + b; }
    bool is_canonical() const;

    template <typename Scalar>
    Vec2<Scalar> reaction(const Vec2<Scalar>& u, double b) const {
        const double be = beta(b), a = p_.a;
        const Scalar u1 = u(0), u2 = u(1);
        const Scalar q = (be / a) * u1 * u1 + 2.0 * a * u1 * u2 + u1 * u1 * u2;
        Vec2<Scalar> r;
        r(0) = (be - 1.0) * u1 + a * a * u2 + q;
        r(1) = -be * u1 - a * a * u2 - q;
        return r;
    }

    template <typename Scalar>
    Mat2<Scalar> jacobian(const Vec2<Scalar>& u, double b) const {
        const double be = beta(b), a = p_.a;
        const Scalar u1 = u(0), u2 = u(1);
        const Scalar g1 = 2.0 * (be / a) * u1 + 2.0 * a * u2 + 2.0 * u1 * u2;
        const Scalar g2 = 2.0 * a * u1 + u1 * u1;
        Mat2<Scalar> J;
        J << (be - 1.0) + g1, a * a + g2,
             -be - g1,        -a * a - g2;
        return J;
    }

    template <typename Scalar>
    Vec2<Scalar> n2(const Vec2<Scalar>& u, const Vec2<Scalar>& v, double b) const {
        const double be = beta(b), a = p_.a;
        const Scalar s = (be / a) * u(0) * v(0) + a * (u(0) * v(1) + u(1) * v(0));
        return Vec2<Scalar>(s, -s);
    }

    template <typename Scalar>
    Vec2<Scalar> n3(const Vec2<Scalar>& u, const Vec2<Scalar>& v, const Vec2<Scalar>& w) const {
        const Scalar s = (u(0) * v(0) * w(1) + u(0) * v(1) * w(0) + u(1) * v(0) * w(0)) / 3.0;
        return Vec2<Scalar>(s, -s);
    }

    // M_b = jacobian(0, b)
    Mat2d linear_part(double b) const { return jacobian<double>(Vec2d::Zero(), b); }

private:
    ModelParams p_;
};

RDModel brusselator(double a = 2.0, double d1 = 4.0, double d2 = 16.0);

// Unshifted fixed point (a, beta/a).
Vec2d equilibrium(double a, double beta);

} // namespace brusselab

#endif
