#pragma once

// Central finite-difference helpers. An optional Richardson level turns the
// O(h^2) central stencils into O(h^4) ones, which is what the intrinsic
// Gaussian-curvature stencil needs to stay below analytic-path tolerances.

namespace umbilic::fd {

template <class F>
double d1(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <class F>
double d1_richardson(F&& f, double x, double h) {
    const double coarse = d1(f, x, h);
    const double fine = d1(f, x, 0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

template <class F>
double d2(F&& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

template <class F>
double d2_richardson(F&& f, double x, double h) {
    const double coarse = d2(f, x, h);
    const double fine = d2(f, x, 0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

// d^2 f / dx dy with the 4-point cross stencil.
template <class F>
double d11(F&& f, double x, double y, double h) {
    return (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) /
           (4.0 * h * h);
}

template <class F>
double d11_richardson(F&& f, double x, double y, double h) {
    const double coarse = d11(f, x, y, h);
    const double fine = d11(f, x, y, 0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

}  // namespace umbilic::fd
