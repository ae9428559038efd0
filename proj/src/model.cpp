#include "brusselab/model.hpp"

#include <cmath>
#include <string>

#include "brusselab/errors.hpp"

namespace brusselab {

RDModel::RDModel(const ModelParams& p) : p_(p) {
    auto check = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ParameterError(std::string("model parameter ") + name + " must be positive");
    };
    check(p.a, "a");
    check(p.d1, "d1");
    check(p.d2, "d2");
}

bool RDModel::is_canonical() const {
    return p_.a == 2.0 && p_.d1 == 4.0 && p_.d2 == 16.0;
}

RDModel brusselator(double a, double d1, double d2) {
    return RDModel(ModelParams{a, d1, d2});
}

Vec2d equilibrium(double a, double beta) {
    if (!(a > 0.0)) throw ParameterError("equilibrium requires a > 0");
    return Vec2d(a, beta / a);
}

} // namespace brusselab
