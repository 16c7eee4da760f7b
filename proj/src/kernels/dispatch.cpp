#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "bicolor/kernels/kernels.hpp"

namespace bicolor::kernels {

namespace {

Isa detect() {
  if (const char* env = std::getenv("BICOLOR_ISA")) {
    if (std::string(env) == "scalar") return Isa::scalar;
  }
  return avx2_available() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

// Below this many nonzeros a single thread is faster than spawning workers.
constexpr std::size_t kParallelNnz = 1u << 20;

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(BICOLOR_HAVE_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2_available()) isa = Isa::scalar;
  current().store(isa, std::memory_order_relaxed);
}

unsigned thread_count() {
  static const unsigned n = [] {
    if (const char* env = std::getenv("BICOLOR_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v > 0) return static_cast<unsigned>(std::min<long>(v, 256));
    }
    return 1u;
  }();
  return n;
}

double dot(std::span<const double> x, std::span<const double> y) {
#if defined(BICOLOR_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::dot(x, y);
#endif
  return scalar::dot(x, y);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
#if defined(BICOLOR_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::axpy(alpha, x, y);
#endif
  scalar::axpy(alpha, x, y);
}

void scale(double alpha, std::span<double> x) {
#if defined(BICOLOR_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::scale(alpha, x);
#endif
  scalar::scale(alpha, x);
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void csr_matvec(const CsrView& a, std::span<const double> x, std::span<double> y) {
  auto rows_fn = &scalar::csr_matvec_rows;
#if defined(BICOLOR_HAVE_AVX2)
  if (active_isa() == Isa::avx2) rows_fn = &avx2::csr_matvec_rows;
#endif
  const unsigned threads = thread_count();
  if (threads <= 1 || a.values.size() < kParallelNnz) {
    rows_fn(a, x, y, 0, a.rows);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (a.rows + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t b = t * chunk;
    const std::size_t e = std::min(a.rows, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, b, e] { rows_fn(a, x, y, b, e); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace bicolor::kernels
