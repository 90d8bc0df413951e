#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "tamegamma/weil.hpp"

namespace tame {

// G = sum * p^{half_p/2}.
struct GaussSum {
  CycValue sum;
  int half_p = 0;
};
// Normalized Gauss sum over U^{d/2}/U^{(d/2)+} of a character of positive depth.
GaussSum gauss_sum(const MultChar& chi);

// Tate epsilon and gamma factors of a character of K^x against psi_K, as
// functions of X = p^{-s} (|x| = p^{-val(x)} with val(p) = 1).
LocalFactor tate_eps(const MultChar& chi);
LocalFactor tate_gamma(const MultChar& chi);

struct GammaProduct {
  LambdaMultiset lambdas;
  LocalFactor factor;

  GammaProduct& operator*=(const GammaProduct& o);
  std::string to_string() const;
};

// gamma(s, rho_chi (x) rho_eta) as a product over double cosets.
GammaProduct gamma_induced_twist(const MultChar& chi, const MultChar& eta);
// gamma(s, R (x) rho_tau), with st_a summands contributing shifts s + k.
GammaProduct gamma_rep_twist(const WeilRep& r, const MultChar& tau);

enum class Verdict { Equal, NotEqual, Indeterminate };
std::string to_string(Verdict v);
Verdict gamma_equal(const GammaProduct& a, const GammaProduct& b);

enum class USign { plus, minus };
// u^+_alpha(X) = N(-alpha)^{-1} f_alpha(-X) and u^-_alpha(X) = (-X)^{-r} f_alpha(-X),
// as Laurent coefficients (exponent -> coefficient in Q_p).
std::map<int, Elem> u_poly(const Elem& alpha, const Field& l, USign sign);
Elem u_value(const Elem& alpha, const Field& l, USign sign, const Elem& beta);

struct TBetaReport {
  int r = 2;
  mpq_class bound;
  std::string method;  // "congruence" or "sampled"
  std::vector<std::string> witnesses;
  std::size_t samples = 0;
};

// Valuation of an element in F-normalized units (val(p) = 1).
mpq_class normalized_val(const Elem& x);
// Lower bound min over 1 <= i < r and both signs of the least positive residue of +-i*d mod 1.
mpq_class t_beta_congruence_bound(const mpq_class& depth, int r);
TBetaReport t_beta(const Elem& beta, int r);
// Infimum of val(1 - u^{+-}_alpha(beta)) over random alpha in every subfield of the
// ambient field of degree < r.
TBetaReport t_beta_sampled(const Elem& beta, const Field& k, int r, std::size_t samples,
                           std::mt19937_64& rng);

// chi and chi' agree on U_K^t (t >= 0 rational, F-normalized).
bool coincide_on_units(const MultChar& a, const MultChar& b, const mpq_class& t);

// Data (E_i, chi_i, chi'_i, beta_i).
struct PairData {
  std::vector<MultChar> chi;
  std::vector<MultChar> chi_prime;
  std::vector<Elem> beta;
};

struct BasicCheck {
  Verdict lhs = Verdict::Indeterminate;
  bool rhs_equal = false;
  bool consistent = false;
};
// Compares the twisted gamma products against the character-value criterion
// prod chi_i((-1)^r f_alpha(-beta_i)).
BasicCheck prop_basic_check(const PairData& data, const MultChar& eta, const Elem& alpha);

struct Basic2Report {
  int r = 0;
  std::vector<mpq_class> t;
  bool restriction_ok = false;   // agree on U^{t_i}
  bool beta_product_ok = false;  // prod chi_i(beta_i) = prod chi'_i(beta_i)
  bool base_restriction_ok = false;
  bool all() const { return restriction_ok && beta_product_ok && base_restriction_ok; }
};
Basic2Report prop_basic2_conditions(const PairData& data, int r);

}  // namespace tame
