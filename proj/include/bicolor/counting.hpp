#pragma once
// Exact boundary-string counts, their closed forms and asymptotics, and
// brute-force oracles for each.

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bicolor/bignum.hpp"

namespace bicolor {

struct CountResult {
  std::string model;
  int l = 0;
  std::string s;                       // empty when the family has no s
  BigInt exact;
  std::optional<BigInt> closed_form;   // exact closed form, when one exists
  std::optional<BigInt> oracle;        // independent enumeration
  std::optional<double> asymptotic;
  std::optional<double> ratio;         // asymptotic / exact

  bool consistent() const;  // closed form and oracle agree with exact
};

// Strings in {e,r,b}^(2l) with even red and even blue counts.
BigInt intersecting_closed_form(int l);   // (9^l + 3) / 4, checked divisible
BigInt intersecting_enumeration(int l);   // l <= 8
CountResult count_intersecting_boundary(int l);

/// The 5x5 matrix over {e, r, b, rb, br}.
using TransferMatrix = std::array<std::array<int, 5>, 5>;
const TransferMatrix& transfer_matrix();
/// Eigenvalues of T, ascending.
std::vector<double> transfer_eigenvalues();
/// The expected spectrum {1+sqrt3, 2, 1, 0, 1-sqrt3}, ascending.
std::vector<double> transfer_expected_eigenvalues();

struct TransferCount {
  int l = 0;
  BigInt entry;         // (T^2l)_{ee}
  BigInt trace;         // trace(T^2l)
  BigInt power_sum;  // (1+sqrt3)^2l + 2^2l + 1 + (1-sqrt3)^2l, exact
};

TransferCount transfer_count(int l);

enum class Topology { line, circle };

/// Whether the colored letters of a string admit a same-color non-crossing
/// perfect matching, decided by exhaustive interval search.
bool noncrossing_matchable(const std::string& word, Topology t);
/// Count of matchable strings of length 2l (2l <= 16).
BigInt nonintersecting_string_oracle(int l, Topology t);

BigInt binomial(int n, int k);
CountResult count_fpl_boundary(int l);

/// sum_n (2l)! / (n! n! (2l-2n)!) s^n.
BigInt count_blc(int l, const BigInt& s);
BigRational count_blc(int l, const BigRational& s);
/// Walks of 2l steps (flat, one of s colored up steps, down) returning to
/// height 0, counted one by one.
BigInt blc_walk_enumeration(int l, int s);

struct BlcAsymptotic {
  double value = 0.0;            // the saddle-point form
  double corrected = 0.0;        // saddle-point form times s^(-1/4)
  double sigma = 0.0;
  double half_sigma = 0.0;       // (2s - sqrt s) / (4s - 1)
  double identity_sigma = 0.0; // sqrt(sigma) (1 - sigma)
  double identity_s = 0.0;     // sqrt(s) (1 - sigma)
  bool sigma_identity_holds = false;
  bool s_identity_holds = false;
};

BlcAsymptotic blc_asymptotic(int l, double s);
CountResult count_blc_result(int l, int s);

enum class BoundModel { Si, Sn, SFPL, SBLC };

struct EntropyBound {
  BoundModel model = BoundModel::Si;
  int l = 0;
  double s = 0.0;
  double bound = 0.0;     // the closed-form estimate
  double log_count = 0.0; // ln of the exact count (Sn: of the (e,e) entry)
  double log_trace = 0.0; // Sn only: ln of the trace form
};

BoundModel parse_bound_model(const std::string& name);
std::string bound_model_name(BoundModel m);
EntropyBound entropy_bound(BoundModel m, int l, double s = 1.0);

struct HypergeometricCheck {
  int l = 0;
  BigInt s;
  BigRational series;  // 2F1(1/2 - l, -l; 1; 4s), terminating sum
  BigRational series_at_8;  // the same series at argument 8
  BigInt blc;
  bool match = false;       // series at 4s equals count_blc(l, s)
  bool match_at_8 = false;  // series at 8 equals count_blc(l, s)
};

BigRational hypergeometric_2f1(int l, const BigRational& z);
HypergeometricCheck hypergeometric_crosscheck(int l, const BigInt& s);

/// CSV rows: model,l,s,exact,closed_form,asymptotic,ratio.
void write_count_csv(std::ostream& os, const std::vector<CountResult>& rows);

}  // namespace bicolor
