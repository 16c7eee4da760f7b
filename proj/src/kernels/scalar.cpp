#include "bicolor/kernels/kernels.hpp"

namespace bicolor::kernels::scalar {

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(double alpha, std::span<double> x) {
  for (double& v : x) v *= alpha;
}

void csr_matvec_rows(const CsrView& a, std::span<const double> x, std::span<double> y,
                     std::size_t row_begin, std::size_t row_end) {
  for (std::size_t r = row_begin; r < row_end; ++r) {
    double s = 0.0;
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      s += a.values[k] * x[static_cast<std::size_t>(a.cols[k])];
    }
    y[r] = s;
  }
}

}  // namespace bicolor::kernels::scalar
