#pragma once

#include <array>
#include <cmath>

namespace shocklab {

// Small dense vector used for conserved states and fluxes. Capacity covers
// everything from scalar conservation laws (n=1) to 2-D Euler (n=4).
struct Vec {
    static constexpr int max_size = 4;

    std::array<double, max_size> a{};
    int n = 0;

    Vec() = default;
    explicit Vec(int size) : n(size) {}
    Vec(double x, double y, double z) : a{x, y, z, 0.0}, n(3) {}
    Vec(double x, double y, double z, double w) : a{x, y, z, w}, n(4) {}

    static Vec scalar(double x) {
        Vec v(1);
        v.a[0] = x;
        return v;
    }
    static Vec zero(int size) { return Vec(size); }

    double& operator[](int i) { return a[i]; }
    double operator[](int i) const { return a[i]; }
    int size() const { return n; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < n; ++i) a[i] += o.a[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < n; ++i) a[i] -= o.a[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (int i = 0; i < n; ++i) a[i] *= s;
        return *this;
    }

    friend Vec operator+(Vec l, const Vec& r) { return l += r; }
    friend Vec operator-(Vec l, const Vec& r) { return l -= r; }
    friend Vec operator*(Vec l, double s) { return l *= s; }
    friend Vec operator*(double s, Vec r) { return r *= s; }

    bool finite() const {
        for (int i = 0; i < n; ++i)
            if (!std::isfinite(a[i])) return false;
        return true;
    }
};

inline double max_abs_diff(const Vec& l, const Vec& r) {
    double m = 0.0;
    for (int i = 0; i < l.n; ++i) m = std::max(m, std::abs(l.a[i] - r.a[i]));
    return m;
}

} // namespace shocklab
