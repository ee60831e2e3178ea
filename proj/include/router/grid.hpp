#pragma once
#include <complex>
#include <vector>

namespace router {

using cplx = std::complex<double>;

// Uniform cell-centered grid in cloud units (lengths divided by the sample
// size L). x is the propagation axis of the current frame, y the in-plane
// transverse axis. The out-of-plane direction is never gridded: every field
// carries a frozen Gaussian profile exp(-(z/z_width)^2) there, and all norm
// quadratures pick up the analytic factor z_width*sqrt(pi/2).
struct GridSpec {
  int nx = 128;
  int ny = 128;
  double x_extent = 3.2;
  double y_extent = 3.2;

  double dx() const { return x_extent / nx; }
  double dy() const { return y_extent / ny; }
  // cell centers, symmetric about 0: y(j) == -y(ny-1-j) exactly
  double x(int i) const { return (i + 0.5 - 0.5 * nx) * dx(); }
  double y(int j) const { return (j + 0.5 - 0.5 * ny) * dy(); }
  long cells() const { return static_cast<long>(nx) * ny; }
};

struct ComplexField {
  GridSpec grid;
  double z_width = 0.2;
  std::vector<cplx> v; // row-major, x contiguous: v[j*nx + i]

  ComplexField() = default;
  ComplexField(const GridSpec& g, double zw)
      : grid(g), z_width(zw), v(static_cast<size_t>(g.cells()), cplx{0.0, 0.0}) {}

  cplx& at(int i, int j) { return v[static_cast<size_t>(j) * grid.nx + i]; }
  const cplx& at(int i, int j) const { return v[static_cast<size_t>(j) * grid.nx + i]; }

  double z_factor() const; // integral of the squared out-of-plane profile
};

// z_factor * dx * dy * sum |v|^2. Row sums are accumulated in index order so
// the result does not depend on anything but the field contents.
double norm_quadrature(const ComplexField& f);

}
