#pragma once

// First-order dual numbers for forward-mode differentiation: value plus one
// derivative slot, propagated one input variable at a time.

#include <cmath>

namespace covkit {

struct Dual {
    double val = 0.0;
    double der = 0.0;

    Dual() = default;
    Dual(double v, double d = 0.0) : val(v), der(d) {}
};

inline Dual operator+(Dual a, Dual b) { return {a.val + b.val, a.der + b.der}; }
inline Dual operator-(Dual a, Dual b) { return {a.val - b.val, a.der - b.der}; }
inline Dual operator-(Dual a) { return {-a.val, -a.der}; }
inline Dual operator*(Dual a, Dual b) { return {a.val * b.val, a.der * b.val + a.val * b.der}; }
inline Dual operator/(Dual a, Dual b) {
    return {a.val / b.val, (a.der * b.val - a.val * b.der) / (b.val * b.val)};
}

inline Dual sin(Dual a) { return {std::sin(a.val), a.der * std::cos(a.val)}; }
inline Dual cos(Dual a) { return {std::cos(a.val), -a.der * std::sin(a.val)}; }
inline Dual exp(Dual a) {
    double e = std::exp(a.val);
    return {e, a.der * e};
}
inline Dual log(Dual a) { return {std::log(a.val), a.der / a.val}; }
inline Dual sqrt(Dual a) {
    double s = std::sqrt(a.val);
    return {s, 0.5 * a.der / s};
}
// abs is differentiable away from 0; callers must reject the origin first.
inline Dual abs(Dual a) { return {std::abs(a.val), a.val < 0.0 ? -a.der : a.der}; }
// constant exponent only
inline Dual pow(Dual a, double e) {
    return {std::pow(a.val, e), a.der * e * std::pow(a.val, e - 1.0)};
}

}  // namespace covkit
