#pragma once

#include <vector>

namespace shocklab {

// Uniform cell-centered 1-D grid: interior point/cell i at x0 + i dx where x0
// already includes the half-cell offset from the domain edge.
struct Grid1D {
    double x0 = 0.0;
    double dx = 1.0;
    int n = 0;

    static Grid1D over(double a, double b, int ncells) {
        Grid1D g;
        g.dx = (b - a) / ncells;
        g.x0 = a + 0.5 * g.dx;
        g.n = ncells;
        return g;
    }
    double x(int i) const { return x0 + i * dx; }
    double left_face(int i) const { return x0 + (i - 0.5) * dx; }
};

struct Grid2D {
    double x0 = 0.0, y0 = 0.0;
    double dx = 1.0, dy = 1.0;
    int nx = 0, ny = 0;

    static Grid2D over(double ax, double bx, int ncx, double ay, double by, int ncy) {
        Grid2D g;
        g.dx = (bx - ax) / ncx;
        g.dy = (by - ay) / ncy;
        g.x0 = ax + 0.5 * g.dx;
        g.y0 = ay + 0.5 * g.dy;
        g.nx = ncx;
        g.ny = ncy;
        return g;
    }
    double x(int i) const { return x0 + i * dx; }
    double y(int j) const { return y0 + j * dy; }
};

// Point-major storage with ng ghost layers on each side; component index
// fastest. cell(i) is valid for i in [-ng, n+ng).
struct Field1D {
    int n = 0, ng = 0, ncomp = 1;
    std::vector<double> data;

    Field1D() = default;
    Field1D(int n_, int ng_, int ncomp_)
        : n(n_), ng(ng_), ncomp(ncomp_), data(static_cast<std::size_t>(n + 2 * ng) * ncomp) {}

    double* cell(int i) { return data.data() + (static_cast<long>(i) + ng) * ncomp; }
    const double* cell(int i) const { return data.data() + (static_cast<long>(i) + ng) * ncomp; }
    long stride() const { return ncomp; }
    double* interior() { return cell(0); }
    const double* interior() const { return cell(0); }
};

// Row-major over y, then x, component fastest. cell(i, j) valid for
// i in [-ng, nx+ng), j in [-ng, ny+ng).
struct Field2D {
    int nx = 0, ny = 0, ng = 0, ncomp = 1;
    std::vector<double> data;

    Field2D() = default;
    Field2D(int nx_, int ny_, int ng_, int ncomp_)
        : nx(nx_), ny(ny_), ng(ng_), ncomp(ncomp_),
          data(static_cast<std::size_t>(nx + 2 * ng) * (ny + 2 * ng) * ncomp) {}

    long row_width() const { return nx + 2 * ng; }
    double* cell(int i, int j) {
        return data.data() + ((static_cast<long>(j) + ng) * row_width() + i + ng) * ncomp;
    }
    const double* cell(int i, int j) const {
        return data.data() + ((static_cast<long>(j) + ng) * row_width() + i + ng) * ncomp;
    }
    long xstride() const { return ncomp; }
    long ystride() const { return row_width() * ncomp; }
};

} // namespace shocklab
