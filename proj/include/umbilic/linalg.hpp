#pragma once

// Fixed-size linear algebra for 4D ambient and 2D surface computations.
// Everything here is closed form; 2x2 symmetric eigenproblems in particular
// are solved by the discriminant formula, never iteratively, so behaviour
// near degenerate (equal-eigenvalue) points stays exact.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace umbilic {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

struct Vec4 {
    std::array<double, 4> c{};

    double& operator[](std::size_t i) { return c[i]; }
    double operator[](std::size_t i) const { return c[i]; }
};

inline Vec4 operator+(const Vec4& a, const Vec4& b) {
    return {{{a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}}};
}
inline Vec4 operator-(const Vec4& a, const Vec4& b) {
    return {{{a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]}}};
}
inline Vec4 operator*(double s, const Vec4& a) {
    return {{{s * a[0], s * a[1], s * a[2], s * a[3]}}};
}
inline Vec4 operator-(const Vec4& a) { return -1.0 * a; }

// Euclidean component operations. These are used for linear-dependence and
// finiteness tests only; metric contractions go through Metric4.
inline double dot_e(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
inline double norm_e(const Vec4& a) { return std::sqrt(dot_e(a, a)); }

inline bool finite(const Vec4& a) {
    return std::isfinite(a[0]) && std::isfinite(a[1]) && std::isfinite(a[2]) &&
           std::isfinite(a[3]);
}

// Frobenius norm of the wedge a^b, sum over the 6 independent components.
inline double wedge_norm(const Vec4& a, const Vec4& b) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double w = a[i] * b[j] - a[j] * b[i];
            s += w * w;
        }
    return std::sqrt(s);
}

// Wedge norm of the normalized vectors; 0 for parallel directions, up to 1
// for orthogonal ones. Returns +inf if either vector vanishes.
inline double direction_wedge(const Vec4& a, const Vec4& b) {
    const double na = norm_e(a), nb = norm_e(b);
    if (na == 0.0 || nb == 0.0) return std::numeric_limits<double>::infinity();
    return wedge_norm((1.0 / na) * a, (1.0 / nb) * b);
}

struct Mat2 {
    // row major: [[a, b], [c, d]]
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
    double frobenius() const { return std::sqrt(a * a + b * b + c * c + d * d); }
};

inline Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}
inline Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
}
inline Mat2 operator*(double s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
inline Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
inline Vec2 operator*(const Mat2& m, Vec2 v) {
    return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
}

inline Mat2 commutator(const Mat2& x, const Mat2& y) { return x * y - y * x; }
inline Mat2 anticommutator(const Mat2& x, const Mat2& y) { return x * y + y * x; }

// Symmetric 2x2 tensor/operator in an orthonormal basis.
struct Sym2 {
    double xx = 0.0, xy = 0.0, yy = 0.0;

    static Sym2 identity() { return {1.0, 0.0, 1.0}; }
    double trace() const { return xx + yy; }
    double det() const { return xx * yy - xy * xy; }
    double frobenius() const { return std::sqrt(xx * xx + 2.0 * xy * xy + yy * yy); }
    Mat2 mat() const { return {xx, xy, xy, yy}; }
    // deviatoric (trace-free) part
    Sym2 traceless() const {
        const double m = 0.5 * trace();
        return {xx - m, xy, yy - m};
    }
};

inline Sym2 operator+(const Sym2& x, const Sym2& y) {
    return {x.xx + y.xx, x.xy + y.xy, x.yy + y.yy};
}
inline Sym2 operator-(const Sym2& x, const Sym2& y) {
    return {x.xx - y.xx, x.xy - y.xy, x.yy - y.yy};
}
inline Sym2 operator*(double s, const Sym2& x) { return {s * x.xx, s * x.xy, s * x.yy}; }

inline Sym2 symmetrize(const Mat2& m) { return {m.a, 0.5 * (m.b + m.c), m.d}; }
inline double asymmetry(const Mat2& m) { return std::abs(m.b - m.c); }

inline Sym2 sym_anticommutator(const Sym2& x, const Sym2& y) {
    return symmetrize(anticommutator(x.mat(), y.mat()));
}

inline double quad_form(const Sym2& s, Vec2 v) {
    return s.xx * v.x * v.x + 2.0 * s.xy * v.x * v.y + s.yy * v.y * v.y;
}

struct SymEigen2 {
    double eval1 = 0.0, eval2 = 0.0;   // eval1 >= eval2
    Vec2 evec1{1.0, 0.0}, evec2{0.0, 1.0};
};

// Closed-form eigendecomposition of a symmetric 2x2 matrix. Deterministic:
// eigenvalues descend, eigenvectors are unit with the first nonzero component
// positive (so degenerate matrices fall back to the coordinate axes).
inline SymEigen2 eigen_sym2(const Sym2& s) {
    SymEigen2 out;
    const double m = 0.5 * (s.xx + s.yy);
    const double h = 0.5 * (s.xx - s.yy);
    const double rho = std::sqrt(h * h + s.xy * s.xy);
    out.eval1 = m + rho;
    out.eval2 = m - rho;
    const double tiny = 1e-300;
    if (rho < tiny) {
        out.evec1 = {1.0, 0.0};
        out.evec2 = {0.0, 1.0};
        return out;
    }
    Vec2 v;
    // (eval1 - yy, xy) and (xy, eval1 - xx) are both eigenvectors of eval1;
    // take the better conditioned one.
    const Vec2 c1{out.eval1 - s.yy, s.xy};
    const Vec2 c2{s.xy, out.eval1 - s.xx};
    v = (norm(c1) >= norm(c2)) ? c1 : c2;
    const double nv = norm(v);
    v = (1.0 / nv) * v;
    if (v.x < 0.0 || (v.x == 0.0 && v.y < 0.0)) v = -1.0 * v;
    out.evec1 = v;
    out.evec2 = {-v.y, v.x};
    if (out.evec2.x < 0.0 || (out.evec2.x == 0.0 && out.evec2.y < 0.0))
        out.evec2 = -1.0 * out.evec2;
    return out;
}

struct Mat4 {
    std::array<std::array<double, 4>, 4> m{};

    double& operator()(std::size_t i, std::size_t j) { return m[i][j]; }
    double operator()(std::size_t i, std::size_t j) const { return m[i][j]; }

    static Mat4 identity() {
        Mat4 r;
        for (int i = 0; i < 4; ++i) r(i, i) = 1.0;
        return r;
    }
};

inline Vec4 operator*(const Mat4& m, const Vec4& v) {
    Vec4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += m(i, j) * v[j];
    return r;
}

inline bool finite(const Mat4& m) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!std::isfinite(m(i, j))) return false;
    return true;
}

inline double det4(const Mat4& a) {
    // cofactor expansion via 2x2 minors of the last two rows
    const auto minor2 = [&](int c0, int c1) {
        return a(2, c0) * a(3, c1) - a(2, c1) * a(3, c0);
    };
    const double m01 = minor2(0, 1), m02 = minor2(0, 2), m03 = minor2(0, 3);
    const double m12 = minor2(1, 2), m13 = minor2(1, 3), m23 = minor2(2, 3);
    return a(0, 0) * (a(1, 1) * m23 - a(1, 2) * m13 + a(1, 3) * m12) -
           a(0, 1) * (a(1, 0) * m23 - a(1, 2) * m03 + a(1, 3) * m02) +
           a(0, 2) * (a(1, 0) * m13 - a(1, 1) * m03 + a(1, 3) * m01) -
           a(0, 3) * (a(1, 0) * m12 - a(1, 1) * m02 + a(1, 2) * m01);
}

// Gauss-Jordan with partial pivoting. Caller guarantees invertibility
// (metric handling checks |det| first).
inline Mat4 inverse4(const Mat4& in) {
    Mat4 a = in;
    Mat4 inv = Mat4::identity();
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (piv != col) {
            std::swap(a.m[piv], a.m[col]);
            std::swap(inv.m[piv], inv.m[col]);
        }
        const double p = a(col, col);
        const double ip = 1.0 / p;
        for (int j = 0; j < 4; ++j) {
            a(col, j) *= ip;
            inv(col, j) *= ip;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < 4; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

// Inertia (n_negative, n_positive) of a symmetric 4x4 matrix via LDL^T with
// symmetric pivoting; used only to confirm Lorentzian signature.
inline std::array<int, 2> inertia4(const Mat4& in, double tol = 1e-12) {
    Mat4 a = in;
    std::array<int, 2> counts{0, 0};
    std::array<bool, 4> done{};
    for (int step = 0; step < 4; ++step) {
        int p = -1;
        double best = -1.0;
        for (int i = 0; i < 4; ++i)
            if (!done[i] && std::abs(a(i, i)) > best) {
                best = std::abs(a(i, i));
                p = i;
            }
        if (p < 0 || best < tol) break;  // remaining block treated as degenerate
        const double d = a(p, p);
        (d < 0.0 ? counts[0] : counts[1])++;
        done[p] = true;
        for (int i = 0; i < 4; ++i) {
            if (done[i]) continue;
            const double f = a(i, p) / d;
            for (int j = 0; j < 4; ++j) {
                if (done[j]) continue;
                a(i, j) -= f * a(p, j);
            }
            a(i, p) = a(p, i) = 0.0;
        }
    }
    return counts;
}

}  // namespace umbilic
