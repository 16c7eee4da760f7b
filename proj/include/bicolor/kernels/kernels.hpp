#pragma once
// Dense-vector and CSR kernels used by the iterative eigensolver and the
// residual checks. Every kernel has a portable scalar reference version and,
// on x86-64, an AVX2/FMA variant. The variant is picked once at runtime from
// CPUID; BICOLOR_ISA=scalar in the environment forces the reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace bicolor::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// True when this binary carries the AVX2 variants and the CPU supports them.
bool avx2_available();

Isa active_isa();
/// Override the runtime choice (tests use this to compare variants).
/// Requesting avx2 on a machine without it falls back to scalar.
void set_isa(Isa isa);

/// Read-only view of a CSR matrix with double values. Column indices are
/// 32-bit so the AVX2 path can use hardware gathers.
struct CsrView {
  std::size_t rows = 0;
  std::span<const std::size_t> row_ptr;   // rows + 1 entries
  std::span<const std::int32_t> cols;
  std::span<const double> values;
};

double dot(std::span<const double> x, std::span<const double> y);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);
double norm2(std::span<const double> x);
/// y = A x. Rows are split across worker threads for large matrices; each
/// row is reduced in a fixed order so the result does not depend on the
/// thread count.
void csr_matvec(const CsrView& a, std::span<const double> x, std::span<double> y);

/// Worker threads for csr_matvec; from BICOLOR_THREADS, default 1.
unsigned thread_count();

namespace scalar {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);
void csr_matvec_rows(const CsrView& a, std::span<const double> x, std::span<double> y,
                     std::size_t row_begin, std::size_t row_end);
}  // namespace scalar

#if defined(BICOLOR_HAVE_AVX2)
namespace avx2 {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);
void csr_matvec_rows(const CsrView& a, std::span<const double> x, std::span<double> y,
                     std::size_t row_begin, std::size_t row_end);
}  // namespace avx2
#endif

}  // namespace bicolor::kernels
