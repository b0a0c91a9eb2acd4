#pragma once

#include "packcov/scalar.hpp"

#include <array>
#include <cstddef>
#include <initializer_list>

namespace packcov {

/// Fixed-dimension point/vector. D is 2 or 3 for the geometry kernel.
template <class S, int D>
struct Vec {
    std::array<S, D> c{};

    Vec() = default;
    Vec(S x, S y)
        requires(D == 2)
        : c{std::move(x), std::move(y)} {}
    Vec(S x, S y, S z)
        requires(D == 3)
        : c{std::move(x), std::move(y), std::move(z)} {}

    S& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    const S& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    Vec operator+(const Vec& o) const {
        Vec r;
        for (int i = 0; i < D; ++i) r[i] = c[i] + o[i];
        return r;
    }
    Vec operator-(const Vec& o) const {
        Vec r;
        for (int i = 0; i < D; ++i) r[i] = c[i] - o[i];
        return r;
    }
    Vec operator-() const {
        Vec r;
        for (int i = 0; i < D; ++i) r[i] = -c[i];
        return r;
    }
    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < D; ++i) c[i] += o[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < D; ++i) c[i] -= o[i];
        return *this;
    }
    friend Vec operator*(const S& s, const Vec& v) {
        Vec r;
        for (int i = 0; i < D; ++i) r[i] = s * v[i];
        return r;
    }
    Vec operator/(const S& s) const {
        Vec r;
        for (int i = 0; i < D; ++i) r[i] = c[i] / s;
        return r;
    }

    bool operator==(const Vec& o) const { return c == o.c; }
    /// Lexicographic; the canonical ordering used everywhere determinism matters.
    bool operator<(const Vec& o) const { return c < o.c; }
};

template <class S, int D>
S dot(const Vec<S, D>& a, const Vec<S, D>& b) {
    S r = a[0] * b[0];
    for (int i = 1; i < D; ++i) r += a[i] * b[i];
    return r;
}

template <class S, int D>
S norm_sq(const Vec<S, D>& v) {
    return dot(v, v);
}

/// z-component of the 2D cross product.
template <class S>
S cross(const Vec<S, 2>& a, const Vec<S, 2>& b) {
    return a[0] * b[1] - a[1] * b[0];
}

template <class S>
Vec<S, 3> cross(const Vec<S, 3>& a, const Vec<S, 3>& b) {
    return Vec<S, 3>(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                     a[0] * b[1] - a[1] * b[0]);
}

template <class S, int D>
Vec<double, D> to_double(const Vec<S, D>& v) {
    Vec<double, D> r;
    for (int i = 0; i < D; ++i) r[i] = ScalarTraits<S>::to_double(v[i]);
    return r;
}

/// Small square matrix; columns are the semantic vectors (lattice generators).
template <class S, int D>
struct Mat {
    std::array<Vec<S, D>, D> col{};

    Vec<S, D>& column(int j) { return col[static_cast<std::size_t>(j)]; }
    const Vec<S, D>& column(int j) const { return col[static_cast<std::size_t>(j)]; }

    Vec<S, D> operator*(const Vec<S, D>& v) const {
        Vec<S, D> r;
        for (int i = 0; i < D; ++i) {
            r[i] = col[0][i] * v[0];
            for (int j = 1; j < D; ++j) r[i] += col[j][i] * v[j];
        }
        return r;
    }

    friend Mat operator*(const S& s, const Mat& m) {
        Mat r;
        for (int j = 0; j < D; ++j) r.col[j] = s * m.col[j];
        return r;
    }

    S det() const {
        if constexpr (D == 2) {
            return cross(col[0], col[1]);
        } else {
            return dot(col[0], cross(col[1], col[2]));
        }
    }

    /// Exact inverse (cofactor form). Throws on a singular matrix.
    Mat inverse() const {
        S d = det();
        if (ScalarTraits<S>::is_zero(d)) throw ParameterError("singular matrix");
        Mat r;
        if constexpr (D == 2) {
            r.col[0] = Vec<S, 2>(col[1][1] / d, -col[0][1] / d);
            r.col[1] = Vec<S, 2>(-col[1][0] / d, col[0][0] / d);
        } else {
            auto c0 = cross(col[1], col[2]);
            auto c1 = cross(col[2], col[0]);
            auto c2 = cross(col[0], col[1]);
            // rows of the inverse are the cofactor cross products / det
            for (int i = 0; i < 3; ++i) {
                r.col[i][0] = c0[i] / d;
                r.col[i][1] = c1[i] / d;
                r.col[i][2] = c2[i] / d;
            }
        }
        return r;
    }
};

}  // namespace packcov
