#include "bicolor/counting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <boost/math/constants/constants.hpp>

namespace bicolor {

namespace {

using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

void check_l(int l, int min) {
  if (l < min) throw std::invalid_argument("l must be at least " + std::to_string(min));
}

std::string ratio_text(const std::optional<double>& v) {
  if (!v) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", *v);
  return buf;
}

BigFloat blc_saddle_big(int l, const BigFloat& s) {
  const BigFloat c = 2 * sqrt(s) + 1;
  const BigFloat pi = boost::math::constants::pi<BigFloat>();
  return pow(c, BigFloat(2 * l) + BigFloat(0.5)) / (2 * sqrt(2 * pi * l));
}

}  // namespace

bool CountResult::consistent() const {
  return (!closed_form || *closed_form == exact) && (!oracle || *oracle == exact);
}

BigInt intersecting_closed_form(int l) {
  check_l(l, 1);
  const BigInt num = BigInt(pow(BigInt(9), static_cast<unsigned>(l))) + 3;
  if (num % 4 != 0) throw std::logic_error("(9^l + 3) / 4 is not an integer");
  return num / 4;
}

BigInt intersecting_enumeration(int l) {
  check_l(l, 1);
  if (l > 8) throw std::length_error("enumeration limited to l <= 8");
  const int n = 2 * l;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  std::uint64_t count = 0;
  for (std::uint64_t c = 0; c < total; ++c) {
    int red = 0, blue = 0;
    for (std::uint64_t x = c; x; x /= 3) {
      red += x % 3 == 1;
      blue += x % 3 == 2;
    }
    count += red % 2 == 0 && blue % 2 == 0;
  }
  return count;
}

CountResult count_intersecting_boundary(int l) {
  CountResult r;
  r.model = "Ni";
  r.l = l;
  r.exact = intersecting_closed_form(l);
  r.closed_form = r.exact;
  if (l <= 6) r.oracle = intersecting_enumeration(l);
  return r;
}

const TransferMatrix& transfer_matrix() {
  static const TransferMatrix t = {{{1, 1, 1, 0, 0},
                                    {1, 1, 0, 0, 1},
                                    {1, 0, 1, 1, 0},
                                    {0, 0, 1, 1, 0},
                                    {0, 1, 0, 0, 1}}};
  return t;
}

std::vector<double> transfer_eigenvalues() {
  Eigen::Matrix<double, 5, 5> m;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) m(i, j) = transfer_matrix()[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 5, 5>> es(m);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + 5);
  return out;
}

std::vector<double> transfer_expected_eigenvalues() {
  const double r3 = std::sqrt(3.0);
  std::vector<double> v{1.0 + r3, 2.0, 1.0, 0.0, 1.0 - r3};
  std::sort(v.begin(), v.end());
  return v;
}

TransferCount transfer_count(int l) {
  check_l(l, 1);
  using M = std::array<std::array<BigInt, 5>, 5>;
  M p{};
  for (int i = 0; i < 5; ++i) p[i][i] = 1;
  const auto& t = transfer_matrix();
  for (int step = 0; step < 2 * l; ++step) {
    M next{};
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 5; ++k)
          if (t[k][j]) next[i][j] += p[i][k] * t[k][j];
    p = std::move(next);
  }
  TransferCount c;
  c.l = l;
  c.entry = p[0][0];
  for (int i = 0; i < 5; ++i) c.trace += p[i][i];
  // (1+sqrt3)^2l + (1-sqrt3)^2l = u_l with u_l = 8 u_{l-1} - 4 u_{l-2}.
  BigInt u0 = 2, u1 = 8;
  for (int k = 1; k < l; ++k) {
    BigInt u2 = 8 * u1 - 4 * u0;
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  c.power_sum = u1 + BigInt(pow(BigInt(4), static_cast<unsigned>(l))) + 1;
  return c;
}

bool noncrossing_matchable(const std::string& word, Topology t) {
  std::string w;
  for (char ch : word) {
    if (ch == 'r' || ch == 'b') {
      w.push_back(ch);
    } else if (ch != 'e') {
      throw std::invalid_argument("strings are over {e, r, b}");
    }
  }
  const int n = static_cast<int>(w.size());
  if (n % 2) return false;
  if (n == 0) return true;
  // memo over arcs (start, length) read cyclically; the line case only ever
  // asks for arcs that do not wrap.
  std::vector<signed char> memo(static_cast<std::size_t>(n) * (n + 1), -1);
  std::function<bool(int, int)> ok = [&](int start, int len) -> bool {
    if (len == 0) return true;
    if (len % 2) return false;
    auto& m = memo[static_cast<std::size_t>(start) * (n + 1) + len];
    if (m >= 0) return m;
    bool found = false;
    const char first = w[start];
    for (int k = 1; k < len && !found; k += 2) {
      if (w[(start + k) % n] != first) continue;
      found = ok((start + 1) % n, k - 1) && ok((start + k + 1) % n, len - k - 1);
    }
    m = found;
    return found;
  };
  if (t == Topology::line) return ok(0, n);
  // On the circle the first colored point may be paired with any other;
  // every rotation is tried as the starting point.
  for (int r = 0; r < n; ++r) {
    if (ok(r, n)) return true;
  }
  return false;
}

BigInt nonintersecting_string_oracle(int l, Topology t) {
  check_l(l, 1);
  if (2 * l > 16) throw std::length_error("string oracle limited to 2l <= 16");
  const int n = 2 * l;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  std::uint64_t count = 0;
  std::string s(static_cast<std::size_t>(n), 'e');
  for (std::uint64_t c = 0; c < total; ++c) {
    std::uint64_t x = c;
    for (int i = 0; i < n; ++i, x /= 3) s[i] = "erb"[x % 3];
    count += noncrossing_matchable(s, t);
  }
  return count;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

CountResult count_fpl_boundary(int l) {
  check_l(l, 1);
  CountResult r;
  r.model = "FPL";
  r.l = l;
  r.exact = binomial(2 * l, l);
  r.closed_form = r.exact;
  const BigFloat pi = boost::math::constants::pi<BigFloat>();
  const BigFloat asym = pow(BigFloat(2), 2 * l) / sqrt(pi * l);
  r.asymptotic = static_cast<double>(asym);
  r.ratio = static_cast<double>(asym / BigFloat(r.exact));
  return r;
}

BigInt count_blc(int l, const BigInt& s) {
  check_l(l, 0);
  BigInt sum = 0, sn = 1;
  for (int n = 0; n <= l; ++n) {
    // (2l)! / (n! n! (2l-2n)!) = C(2l, 2n) C(2n, n)
    sum += binomial(2 * l, 2 * n) * binomial(2 * n, n) * sn;
    sn *= s;
  }
  return sum;
}

BigRational count_blc(int l, const BigRational& s) {
  check_l(l, 0);
  BigRational sum = 0, sn = 1;
  for (int n = 0; n <= l; ++n) {
    sum += BigRational(binomial(2 * l, 2 * n) * binomial(2 * n, n)) * sn;
    sn *= s;
  }
  return sum;
}

BigInt blc_walk_enumeration(int l, int s) {
  check_l(l, 0);
  if (s < 1) throw std::invalid_argument("s must be positive");
  const int n = 2 * l;
  std::uint64_t count = 0;
  std::function<void(int, int)> walk = [&](int step, int height) {
    if (std::abs(height) > n - step) return;
    if (step == n) {
      ++count;
      return;
    }
    walk(step + 1, height);                          // flat
    for (int c = 0; c < s; ++c) walk(step + 1, height + 1);  // up, colored
    walk(step + 1, height - 1);                      // down
  };
  walk(0, 0);
  return count;
}

BlcAsymptotic blc_asymptotic(int l, double s) {
  check_l(l, 1);
  if (!(s > 0)) throw std::invalid_argument("s must be positive");
  BlcAsymptotic a;
  const double rs = std::sqrt(s);
  const BigFloat big = blc_saddle_big(l, BigFloat(s));
  a.value = static_cast<double>(big);
  a.corrected = static_cast<double>(big / pow(BigFloat(s), BigFloat(0.25)));
  a.sigma = (4 * s - 2 * rs) / (4 * s - 1);
  a.half_sigma = (2 * s - rs) / (4 * s - 1);
  a.identity_sigma = std::sqrt(a.sigma) * (1 - a.sigma);
  a.identity_s = rs * (1 - a.sigma);
  a.sigma_identity_holds = std::abs(a.sigma / 2 - a.identity_sigma) <= 1e-12;
  a.s_identity_holds = std::abs(a.sigma / 2 - a.identity_s) <= 1e-12;
  return a;
}

CountResult count_blc_result(int l, int s) {
  CountResult r;
  r.model = "BLC";
  r.l = l;
  r.s = std::to_string(s);
  r.exact = count_blc(l, BigInt(s));
  if (l <= 6 && s <= 3) r.oracle = blc_walk_enumeration(l, s);
  if (l >= 1) {
    const BigFloat asym = blc_saddle_big(l, BigFloat(s));
    r.asymptotic = static_cast<double>(asym);
    r.ratio = static_cast<double>(asym / BigFloat(r.exact));
  }
  return r;
}

BoundModel parse_bound_model(const std::string& name) {
  if (name == "Si") return BoundModel::Si;
  if (name == "Sn") return BoundModel::Sn;
  if (name == "SFPL") return BoundModel::SFPL;
  if (name == "SBLC") return BoundModel::SBLC;
  throw std::invalid_argument("unknown bound model '" + name + "'");
}

std::string bound_model_name(BoundModel m) {
  switch (m) {
    case BoundModel::Si: return "Si";
    case BoundModel::Sn: return "Sn";
    case BoundModel::SFPL: return "SFPL";
    case BoundModel::SBLC: return "SBLC";
  }
  return "?";
}

EntropyBound entropy_bound(BoundModel m, int l, double s) {
  check_l(l, 1);
  EntropyBound b;
  b.model = m;
  b.l = l;
  b.s = s;
  const double two_l = 2.0 * l;
  switch (m) {
    case BoundModel::Si:
      b.bound = two_l * std::log(3.0) - std::log(4.0);
      b.log_count = log_big(intersecting_closed_form(l));
      break;
    case BoundModel::Sn: {
      b.bound = two_l * std::log(1.0 + std::sqrt(3.0));
      const auto t = transfer_count(l);
      b.log_count = log_big(t.entry);
      b.log_trace = log_big(t.power_sum);
      break;
    }
    case BoundModel::SFPL:
      b.bound = two_l * std::log(2.0) - 0.5 * std::log(two_l) - 0.5 * std::log(std::numbers::pi / 2);
      b.log_count = log_big(binomial(2 * l, l));
      break;
    case BoundModel::SBLC: {
      const double c = 2 * std::sqrt(s) + 1;
      b.bound = two_l * std::log(c) - 0.5 * std::log(two_l) - 0.5 * std::log(4 * std::numbers::pi / c);
      const double si = std::round(s);
      if (std::abs(s - si) < 1e-12 && si >= 1) {
        b.log_count = log_big(count_blc(l, BigInt(static_cast<long long>(si))));
      } else {
        const auto q = count_blc(l, BigRational(static_cast<long long>(std::llround(s * 1e6)), 1000000));
        b.log_count = static_cast<double>(boost::multiprecision::log(BigFloat(q)));
      }
      break;
    }
  }
  return b;
}

BigRational hypergeometric_2f1(int l, const BigRational& z) {
  check_l(l, 0);
  // (a)_k (b)_k / (c)_k / k! z^k with a = 1/2 - l, b = -l, c = 1; b ends the sum.
  const BigRational a = BigRational(1, 2) - l;
  const BigRational b = -l;
  BigRational term = 1, sum = 1;
  for (int k = 0; k < l; ++k) {
    term *= (a + k) * (b + k) / BigRational((k + 1) * (k + 1));
    term *= z;
    sum += term;
  }
  return sum;
}

HypergeometricCheck hypergeometric_crosscheck(int l, const BigInt& s) {
  if (l > 200) throw std::invalid_argument("l must be at most 200");
  HypergeometricCheck h;
  h.l = l;
  h.s = s;
  h.blc = count_blc(l, s);
  h.series = hypergeometric_2f1(l, BigRational(4 * s));
  h.series_at_8 = hypergeometric_2f1(l, BigRational(8));
  h.match = h.series == BigRational(h.blc);
  h.match_at_8 = h.series_at_8 == BigRational(h.blc);
  return h;
}

void write_count_csv(std::ostream& os, const std::vector<CountResult>& rows) {
  os << "model,l,s,exact,closed_form,asymptotic,ratio\n";
  for (const auto& r : rows) {
    os << r.model << ',' << r.l << ',' << r.s << ',' << r.exact << ',';
    if (r.closed_form) os << *r.closed_form;
    os << ',' << ratio_text(r.asymptotic) << ',' << ratio_text(r.ratio) << '\n';
  }
}

}  // namespace bicolor
