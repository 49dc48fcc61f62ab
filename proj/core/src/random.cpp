#include "ncprism/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ncprism/convexity.hpp"

namespace ncprism {

double RandomSource::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

std::size_t RandomSource::index(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

ComplexMatrix RandomSource::gaussian(Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(engine_);
      const double im = normal(engine_);
      g(i, j) = Complex(re, im);
    }
  return g;
}

ComplexMatrix RandomSource::unitary(Eigen::Index n) {
  const ComplexMatrix g = gaussian(n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * identity(n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

ComplexMatrix RandomSource::isometry(Eigen::Index m, Eigen::Index n) {
  return unitary(m).leftCols(n);
}

ComplexMatrix RandomSource::hermitian_with_norm(Eigen::Index n, double norm) {
  const ComplexMatrix g = gaussian(n, n);
  const ComplexMatrix h = hermitian_part(g);
  const double current = std::max(std::abs(min_eigenvalue(h)), std::abs(max_eigenvalue(h)));
  if (current == 0.0) return ComplexMatrix::Zero(n, n);
  return h * (norm / current);
}

ComplexMatrix RandomSource::psd(Eigen::Index n) {
  const ComplexMatrix g = gaussian(n, n);
  return hermitian_part(g * g.adjoint());
}

ComplexMatrix RandomSource::density(Eigen::Index n) {
  const ComplexMatrix p = psd(n);
  return p / p.trace().real();
}

ComplexMatrix RandomSource::symmetry(Eigen::Index n) {
  const ComplexMatrix u = unitary(n);
  Eigen::VectorXcd signs(n);
  for (Eigen::Index i = 0; i < n; ++i) signs(i) = index(2) == 0 ? 1.0 : -1.0;
  return hermitian_part(u * signs.asDiagonal() * u.adjoint());
}

ComplexMatrix RandomSource::polygon_compression(std::size_t k, Eigen::Index m, Eigen::Index n) {
  Eigen::VectorXcd spectrum(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double angle = 2.0 * kPi * static_cast<double>(index(k)) / static_cast<double>(k);
    spectrum(i) = Complex(std::cos(angle), std::sin(angle));
  }
  const ComplexMatrix z = isometry(m, n);
  return z.adjoint() * spectrum.asDiagonal() * z;
}

ComplexMatrix RandomSource::polygon_point(std::size_t k, Eigen::Index n, double fill) {
  const ComplexMatrix g = gaussian(n, n);
  const PolytopeSpec prism = make_prism(k);
  const std::vector<ComplexMatrix> planar{real_part(g), imag_part(g)};
  double worst = 0.0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::array<double, 2> normal{prism.facets[f].normal[0], prism.facets[f].normal[1]};
    worst = std::max(worst, support_value(planar, normal) / prism.facets[f].offset);
  }
  if (worst <= 0.0) return ComplexMatrix::Zero(n, n);
  return g * (fill / worst);
}

}  // namespace ncprism
