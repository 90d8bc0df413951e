#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <set>

#include "tamegamma/errors.hpp"
#include "tamegamma/scenarios.hpp"

namespace tame {

namespace {

using Rng = std::mt19937_64;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(v.size()) - 1))];
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

VerificationReport suite(const std::string& name, std::uint64_t seed) {
  VerificationReport rep;
  rep.scenario = name;
  rep.config = {{"suite", name}, {"seed", seed}};
  return rep;
}

// Counts failures of a property over a number of trials and records one check.
class Tally {
 public:
  Tally(std::string name, std::string claim) : name_(std::move(name)), claim_(std::move(claim)) {}
  void record(bool ok, const std::string& what) {
    ++trials_;
    if (!ok && first_.empty()) first_ = what;
    if (!ok) ++failed_;
  }
  void flush(VerificationReport& rep) const {
    std::string w = std::to_string(trials_ - failed_) + "/" + std::to_string(trials_) + " hold";
    if (!first_.empty()) w += "; first failure " + first_;
    rep.add(name_, claim_, failed_ == 0 && trials_ > 0, w);
  }

 private:
  std::string name_, claim_, first_;
  std::size_t trials_ = 0, failed_ = 0;
};

CycValue random_cyc(Rng& rng, std::int64_t m) {
  std::vector<std::pair<std::int64_t, mpq_class>> terms;
  int n = static_cast<int>(uniform(rng, 1, 6));
  for (int i = 0; i < n; ++i)
    terms.emplace_back(uniform(rng, -3 * m, 3 * m), mpq_class(uniform(rng, -9, 9)) / uniform(rng, 1, 4));
  return CycValue::from_terms(m, terms);
}

// sum of c * zeta_K^a * pi_K^j over a few random terms, lowest exponent j0.
Elem random_in(const Field& k, std::int64_t j0, int terms, Rng& rng) {
  const Ambient& amb = k.ambient();
  Elem x = amb.zero(amb.full_prec());
  for (int t = 0; t < terms; ++t) {
    std::int64_t c = t == 0 ? 1 : uniform(rng, 0, amb.p() - 1);
    if (c == 0) continue;
    x += amb.from_int(c) * k.zeta_gen().pow(uniform(rng, 0, k.residue_size() - 2)) * k.uniformizer().pow(j0 + t);
  }
  return x;
}

RootOfUnity random_root(Rng& rng, std::int64_t order) { return {uniform(rng, 0, order - 1), order}; }

}  // namespace

VerificationReport exact_arithmetic_suite(std::uint64_t seed) {
  Timer timer;
  Rng rng(seed);
  VerificationReport rep = suite("exact arithmetic", seed);
  Tally canon("canonical form idempotent", "rebuilding a value from its canonical coefficients changes nothing");
  Tally ring("ring axioms", "associativity, commutativity, distributivity, additive inverse, unit");
  Tally conj("conjugation", "conj is an involutive ring automorphism");
  const std::vector<std::int64_t> moduli{3, 5, 8, 12, 15, 20, 21};
  for (int trial = 0; trial < 200; ++trial) {
    std::int64_t m = pick(rng, moduli);
    CycValue a = random_cyc(rng, m), b = random_cyc(rng, m), c = random_cyc(rng, m);
    std::vector<std::pair<std::int64_t, mpq_class>> again;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) again.emplace_back(static_cast<std::int64_t>(i), a.coeffs()[i]);
    CycValue a2 = CycValue::from_terms(a.modulus(), again);
    canon.record(a2 == a && a2.to_string() == a.to_string(), a.to_string());
    const CycValue one(1L), zero;
    bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a + b == b + a && a * b == b * a &&
              a * (b + c) == a * b + a * c && a - a == zero && a + (-a) == zero && a * one == a && a + zero == a;
    ring.record(ok, a.to_string() + ", " + b.to_string() + ", " + c.to_string());
    conj.record(a.conj().conj() == a && (a * b).conj() == a.conj() * b.conj() && (a + b).conj() == a.conj() + b.conj(),
                a.to_string());
  }
  canon.flush(rep);
  ring.flush(rep);
  conj.flush(rep);

  std::vector<std::pair<std::int64_t, mpq_class>> terms;
  for (std::int64_t t = 0; t < 5; ++t) terms.emplace_back(t * t, 1);
  CycValue g = CycValue::from_terms(5, terms);
  CycValue norm = g * g.conj();
  rep.add("quadratic Gauss sum magnitude", "sum_t zeta_5^{t^2} times its conjugate is 5", norm == CycValue(5L),
          norm.to_string());
  CycValue s = sqrt_prime(7);
  rep.add("square root of a prime", "sqrt_prime(7)^2 = 7", s * s == CycValue(7L), s.to_string());
  rep.seconds = timer.seconds();
  return rep;
}

VerificationReport field_suite(std::uint64_t seed) {
  Timer timer;
  Rng rng(seed);
  VerificationReport rep = suite("fields", seed);
  Tally teich("Teichmueller round trip", "x = pi^a zeta^b u recomposes exactly, u a principal unit (digits 10)");
  Tally roots("Teichmueller roots", "zeta_K^(q_K - 1) = 1 exactly (digits 10)");
  Tally logexp("log/exp round trip", "exp(log u) = u and log(exp x) = x modulo the truncation level (digits 10)");
  for (int p : {5, 7, 13}) {
    AmbientPtr amb = ambient_for(p, {make_field(p, 1, 2, 0), make_field(p, 2, 1, 0)}, 10);
    std::vector<FieldPtr> fields{base_field(amb), embed(amb, make_field(p, 1, 2, 0)),
                                 embed(amb, make_field(p, 2, 1, 0)), Field::fixed_field(amb, {0})};
    const Elem one = amb->from_int(1);
    for (const auto& k : fields) {
      std::string tag = "p=" + std::to_string(p) + " " + k->to_string();
      roots.record((k->zeta_gen().pow(k->residue_size() - 1) - one).is_zero(), tag);
      for (int trial = 0; trial < 10; ++trial) {
        Elem x = random_in(*k, uniform(rng, -3, 3), 4, rng);
        auto parts = teichmuller_decompose(x, *k);
        Elem rec = k->uniformizer().pow(parts.a) * k->zeta_gen().pow(parts.b) * parts.u;
        teich.record((rec - x).is_zero() && (parts.u - one).val() >= k->pi_step(), tag + " x=" + x.to_string());
      }
      // Strongly tame (p > depth_units + e_K) and well inside the working precision.
      std::int64_t d = std::min<std::int64_t>(p - k->e() - 1, 4);
      std::int64_t v = (d + 1) * k->pi_step();
      for (int trial = 0; trial < 10; ++trial) {
        Elem u = one + random_in(*k, 1, 4, rng);
        Elem x = trunc_log(u, *k, d);
        logexp.record(trunc_exp(x, *k, d).congruent(u, v), tag + " u=" + u.to_string());
        Elem y = random_in(*k, 1, 4, rng);
        logexp.record(trunc_log(trunc_exp(y, *k, d), *k, d).congruent(y, v), tag + " x=" + y.to_string());
      }
    }
  }
  teich.flush(rep);
  roots.flush(rep);
  logexp.flush(rep);

  // U^1/U^3 of Q_5 has 25 elements.
  {
    AmbientPtr amb = ambient_for(5, {make_field(5, 1, 1, 0)}, 10);
    FieldPtr q5 = base_field(amb);
    std::vector<Elem> units, logs;
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) units.push_back(amb->from_int(1 + 5 * a + 25 * b));
    bool inverse_ok = true;
    for (const auto& u : units) {
      logs.push_back(trunc_log(u, *q5, 2));
      if (!trunc_exp(logs.back(), *q5, 2).congruent(u, 3)) inverse_ok = false;
    }
    bool distinct = true;
    for (std::size_t i = 0; i < logs.size(); ++i)
      for (std::size_t j = i + 1; j < logs.size(); ++j)
        if (logs[i].congruent(logs[j], 3)) distinct = false;
    bool in_ideal = std::all_of(logs.begin(), logs.end(), [](const Elem& x) { return x.val() >= 1; });
    rep.add("log/exp bijection of order 25", "trunc_log maps U^1/U^3 of Q_5 injectively into P/P^3 with inverse trunc_exp",
            inverse_ok && distinct && in_ideal, std::to_string(logs.size()) + " classes");
  }

  Tally tensor("tensor decomposition degrees", "sum over double cosets of [K_g:F] = [E:F][L:F]");
  for (int trial = 0; trial < 50; ++trial) {
    int p = trial % 2 ? 7 : 5;
    auto specs = tame_specs_up_to(p, 3);
    TameFieldSpec se = pick(rng, specs), sl = pick(rng, specs);
    AmbientPtr amb = ambient_for(p, {se, sl});
    FieldPtr e = embed(amb, se), l = embed(amb, sl);
    int sum = 0;
    for (const auto& t : tensor_decompose(*e, *l)) sum += t.field->degree();
    tensor.record(sum == e->degree() * l->degree(), se.to_string() + " x " + sl.to_string());
  }
  tensor.flush(rep);
  rep.seconds = timer.seconds();
  return rep;
}

VerificationReport local_factor_suite(std::uint64_t seed) {
  Timer timer;
  Rng rng(seed);
  VerificationReport rep = suite("local factors", seed);
  Tally gauss("Gauss sum", "G = 1 when e*d is odd and |G| = 1 when it is even");
  Tally eps("epsilon magnitude", "eps(0) conj(eps(0)) = q^(N d) for unitary ramified chi");
  Tally ratio("gamma ratio", "gamma(chi_1)/gamma(chi_2) = chi_2(c)/chi_1(c) when c represents both");

  auto random_char = [&](const FieldPtr& e, std::int64_t m) {
    const Ambient& amb = e->ambient();
    Elem w = amb.zero(amb.full_prec());
    if (m > 0) w = random_in(*e, -m, static_cast<int>(std::min<std::int64_t>(m, 3)), rng);
    std::int64_t q = e->residue_size();
    return MultChar(e, random_root(rng, 4), uniform(rng, 0, q - 2), w);
  };

  for (int trial = 0; trial < 100; ++trial) {
    int p = trial % 2 ? 7 : 5;
    auto specs = tame_specs_up_to(p, 2);
    TameFieldSpec s = pick(rng, specs);
    AmbientPtr amb = ambient_for(p, {s});
    FieldPtr e = embed(amb, s);
    std::int64_t m = uniform(rng, 1, 4);
    MultChar chi = random_char(e, m);
    GaussSum g = gauss_sum(chi);
    std::string tag = chi.to_string();
    if (m % 2)
      gauss.record(g.sum == CycValue(1L) && g.half_p == 0, tag);
    else {
      mpq_class scale;
      mpz_ui_pow_ui(scale.get_num_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(std::abs(g.half_p)));
      if (g.half_p < 0) scale = 1 / scale;
      gauss.record(g.sum * g.sum.conj() * CycValue(scale) == CycValue(1L), tag);
    }

    // Tame ramified characters (depth 0) are included.
    std::int64_t me = trial % 5 == 0 ? 0 : m;
    MultChar c = random_char(e, me);
    if (me == 0 && c.tame() == 0) c = MultChar(e, c.unif(), 1, c.wild());
    CycValue v = tate_eps(c).value_at_zero();
    mpz_class qn;
    mpz_ui_pow_ui(qn.get_mpz_t(), static_cast<unsigned long>(e->residue_size()), static_cast<unsigned long>(me));
    eps.record(v * v.conj() == CycValue(mpq_class(qn)), c.to_string());
  }
  for (int trial = 0; trial < 50; ++trial) {
    int p = trial % 2 ? 7 : 5;
    TameFieldSpec s = pick(rng, tame_specs_up_to(p, 2));
    AmbientPtr amb = ambient_for(p, {s});
    FieldPtr e = embed(amb, s);
    MultChar c1 = random_char(e, uniform(rng, 1, 4));
    MultChar c2(e, random_root(rng, 4), uniform(rng, 0, e->residue_size() - 2), c1.wild());
    const Elem& c = c1.wild();
    LocalFactor lhs = tate_gamma(c1) * tate_gamma(c2).inverse();
    LocalFactor rhs = LocalFactor::root(p, c2(c) * c1(c).inverse());
    ratio.record(factor_eq(lhs, rhs), c1.to_string() + " / " + c2.to_string());
  }
  gauss.flush(rep);
  eps.flush(rep);
  ratio.flush(rep);
  rep.seconds = timer.seconds();
  return rep;
}

VerificationReport t_beta_suite(std::uint64_t seed) {
  Timer timer;
  Rng rng(seed);
  VerificationReport rep = suite("t_beta", seed);
  struct Config {
    int p, e, m;
  };
  auto beta_of = [](const Config& c) {
    AmbientPtr amb = ambient_for(c.p, {make_field(c.p, 1, c.e, 0)});
    FieldPtr e = embed(amb, make_field(c.p, 1, c.e, 0));
    return std::pair{e, e->uniformizer_inverse().pow(c.m)};
  };

  Tally two("r = 2 distance to Z", "t_beta(2) from the congruence equals the sampled infimum (200 samples)");
  const std::vector<Config> r2{{5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {7, 2, 3}, {7, 3, 4},
                               {7, 6, 5}, {11, 5, 3}, {13, 4, 3}, {5, 3, 5}, {11, 5, 7}};
  for (const auto& c : r2) {
    auto [e, beta] = beta_of(c);
    TBetaReport exact = t_beta(beta, 2);
    TBetaReport sampled = t_beta_sampled(beta, *e, 2, 200, rng);
    two.record(exact.bound == sampled.bound, "p=" + std::to_string(c.p) + " M=" + std::to_string(c.e) + " m=" +
                                                 std::to_string(c.m) + ": " + exact.bound.get_str() + " vs " +
                                                 sampled.bound.get_str());
  }
  // Below depth 1/2 no alpha in F satisfies val(beta) < val(alpha) < 0, so only u+ contributes
  // and the infimum is 1 - d, strictly above the distance to Z.
  Tally shallow("r = 2 below depth 1/2", "sampled t_beta(2) = 1 - d >= congruence bound when d < 1/2");
  for (const auto& c : std::vector<Config>{{5, 3, 1}, {5, 4, 1}, {11, 5, 2}}) {
    auto [e, beta] = beta_of(c);
    mpq_class d(c.m, c.e);
    TBetaReport exact = t_beta(beta, 2);
    TBetaReport sampled = t_beta_sampled(beta, *e, 2, 200, rng);
    shallow.record(sampled.bound == 1 - d && exact.bound <= sampled.bound,
                   "M=" + std::to_string(c.e) + " m=" + std::to_string(c.m) + ": sampled " + sampled.bound.get_str());
  }
  shallow.flush(rep);
  two.flush(rep);

  struct BoundConfig {
    Config c;
    int r;
  };
  for (const BoundConfig& lc : {BoundConfig{{5, 8, 5}, 3}, BoundConfig{{11, 10, 3}, 3}, BoundConfig{{13, 7, 2}, 3}}) {
    auto [e, beta] = beta_of(lc.c);
    TBetaReport exact = t_beta(beta, lc.r);
    TBetaReport sampled = t_beta_sampled(beta, *e, lc.r, 500, rng);
    mpq_class floor(1, lc.c.e);
    std::string name = "lower bound (M,m,r)=(" + std::to_string(lc.c.e) + "," + std::to_string(lc.c.m) + "," +
                       std::to_string(lc.r) + ") p=" + std::to_string(lc.c.p);
    rep.add(name, "1/M < t_beta(r) <= 500-sample infimum of val(1 - u(beta))",
            exact.bound > floor && sampled.bound > floor && exact.bound <= sampled.bound,
            "bound " + exact.bound.get_str() + ", sampled " + sampled.bound.get_str());
  }
  rep.seconds = timer.seconds();
  return rep;
}

BasicInstanceStats random_basic_instances(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  BasicInstanceStats stats;
  const std::vector<int> primes{5, 7, 11};
  std::size_t attempts = 0;
  while (stats.instances < count && attempts < 20 * count) {
    ++attempts;
    const int p = pick(rng, primes);
    const int npairs = static_cast<int>(uniform(rng, 1, 2));
    const int e_deg = static_cast<int>(uniform(rng, 2, 3));
    std::vector<TameFieldSpec> lspecs;
    for (const auto& s : tame_specs_up_to(p, 3))
      if (s.degree() * e_deg <= 6) lspecs.push_back(s);
    std::vector<TameFieldSpec> especs;
    for (int i = 0; i < npairs; ++i) especs.push_back(make_field(p, 1, e_deg, uniform(rng, 0, p - 2)));
    const TameFieldSpec lspec = pick(rng, lspecs);
    std::vector<TameFieldSpec> all = especs;
    all.push_back(lspec);
    AmbientPtr amb = ambient_for(p, all);
    FieldPtr l = embed(amb, lspec);

    PairData data;
    std::vector<mpq_class> depths;
    for (const auto& s : especs) {
      FieldPtr e = embed(amb, s);
      std::int64_t m;
      do m = uniform(rng, 1, 5);
      while (std::gcd<std::int64_t>(m, e_deg) != 1);
      Elem beta = e->zeta_gen().pow(uniform(rng, 0, p - 2)) * e->uniformizer_inverse().pow(m);
      data.chi.emplace_back(e, random_root(rng, 4), uniform(rng, 0, p - 2), beta);
      data.beta.push_back(beta);
      depths.push_back(data.chi.back().depth());
    }

    // eta of depth different from every pair depth.
    std::int64_t j = uniform(rng, 0, 3);
    const std::int64_t ql = l->residue_size();
    Elem w = amb->zero(amb->full_prec());
    if (j > 0) w = l->zeta_gen().pow(uniform(rng, 0, ql - 2)) * l->uniformizer_inverse().pow(j);
    MultChar eta(l, random_root(rng, 4), uniform(rng, 0, ql - 2), w);
    if (std::find(depths.begin(), depths.end(), eta.depth()) != depths.end() || !is_admissible(eta)) continue;
    const Elem& alpha = eta.wild();

    // chi'_i: the same class on U^{d_i/2}, random elsewhere.  Aim for equal right-hand
    // sides on every other instance.
    auto f = char_poly(alpha, *l);
    std::vector<Elem> xs;
    for (const auto& b : data.beta) {
      Elem x = poly_eval(f, -b);
      xs.push_back(l->degree() % 2 ? -x : x);
    }
    const bool want_equal = stats.instances % 2 == 0;
    for (int tries = 0; tries < 40; ++tries) {
      data.chi_prime.clear();
      for (std::size_t i = 0; i < data.chi.size(); ++i) {
        const MultChar& c = data.chi[i];
        const FieldPtr& e = c.field();
        std::int64_t m = c.depth_units();
        std::int64_t kmax = (m + 1) / 2 - 1;
        Elem wild = c.wild();
        if (kmax >= 1 && uniform(rng, 0, 1))
          wild = wild + e->zeta_gen().pow(uniform(rng, 0, p - 2)) * e->uniformizer_inverse().pow(uniform(rng, 1, kmax));
        data.chi_prime.emplace_back(e, random_root(rng, 4), uniform(rng, 0, p - 2), wild);
      }
      RootOfUnity lhs, rhs;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        lhs *= data.chi[i](xs[i]);
        rhs *= data.chi_prime[i](xs[i]);
      }
      if ((lhs == rhs) == want_equal) break;
    }

    std::string tag = "p=" + std::to_string(p) + " eta=" + eta.to_string();
    for (const auto& c : data.chi) tag += " chi=" + c.to_string();
    for (const auto& c : data.chi_prime) tag += " chi'=" + c.to_string();
    try {
      BasicCheck bc = prop_basic_check(data, eta, alpha);
      ++stats.instances;
      if (bc.lhs == Verdict::Equal) ++stats.lhs_equal;
      if (!bc.consistent) {
        ++stats.inconsistent;
        stats.failures.push_back(tag + " lhs " + to_string(bc.lhs) + " rhs " + (bc.rhs_equal ? "equal" : "differ"));
      }
    } catch (const PrecisionError& e) {
      ++stats.instances;
      ++stats.inconsistent;
      stats.failures.push_back(tag + " precision: " + e.what());
    }
  }
  return stats;
}

VerificationReport basic_criterion_suite(std::uint64_t seed, std::size_t instances) {
  Timer timer;
  VerificationReport rep = suite("gamma product criterion", seed);
  BasicInstanceStats s = random_basic_instances(instances, seed);
  std::string w = std::to_string(s.instances) + " instances, " + std::to_string(s.lhs_equal) + " with equal gamma products, " +
                  std::to_string(s.inconsistent) + " inconsistent";
  if (!s.failures.empty()) w += "; first " + s.failures.front();
  rep.add("gamma products match the character-value criterion",
          "twisted gamma products agree exactly when prod chi_i((-1)^r f_alpha(-beta_i)) = prod chi'_i(...)",
          s.inconsistent == 0 && s.instances >= instances, w);
  rep.add("both outcomes exercised", "the random instances include equal and unequal gamma products",
          s.lhs_equal > 0 && s.lhs_equal < s.instances);
  rep.seconds = timer.seconds();
  return rep;
}

VerificationReport selftest(std::uint64_t seed) {
  Timer timer;
  VerificationReport all = suite("selftest", seed);
  for (const auto& part : {exact_arithmetic_suite(seed), field_suite(seed), local_factor_suite(seed),
                           t_beta_suite(seed), basic_criterion_suite(seed)}) {
    for (auto c : part.checks) {
      c.name = part.scenario + ": " + c.name;
      all.checks.push_back(std::move(c));
    }
  }
  all.seconds = timer.seconds();
  return all;
}

}  // namespace tame
