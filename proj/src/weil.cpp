#include "tamegamma/weil.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tamegamma/errors.hpp"

namespace tame {

std::string InducedSummand::to_string() const {
  std::ostringstream os;
  os << "Ind" << chi.to_string();
  if (sl2_dim != 1) os << "(x)st" << sl2_dim;
  return os.str();
}

WeilRep& WeilRep::add(const MultChar& chi, int sl2_dim) {
  parts_.push_back({chi, sl2_dim});
  return *this;
}

WeilRep& WeilRep::add(const WeilRep& other) {
  parts_.insert(parts_.end(), other.parts_.begin(), other.parts_.end());
  return *this;
}

std::string WeilRep::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? " + " : "") << parts_[i].to_string();
  return os.str();
}

int rep_dim(const WeilRep& r) {
  int d = 0;
  for (const auto& s : r.summands()) d += s.dim();
  return d;
}

WeilRep rep_dual(const WeilRep& r) {
  WeilRep out;
  for (const auto& s : r.summands()) out.add(s.chi.dual(), s.sl2_dim);
  return out;
}

MultChar rep_det(const WeilRep& r, const FieldPtr& base) {
  MultChar det = MultChar::trivial(base);
  for (const auto& s : r.summands()) {
    MultChar w = *s.chi.field() == *base ? s.chi : det_induced(s.chi);
    det = det * w.pow(s.sl2_dim);
  }
  return det;
}

MultChar unramified_character(const FieldPtr& f, const RootOfUnity& z) {
  const Ambient& A = f->ambient();
  return MultChar(f, z, 0, A.zero(A.full_prec()));
}

namespace {

bool is_normal_abelian(const Ambient& A, const std::vector<GalId>& big, const std::vector<GalId>& small) {
  auto in_small = [&](GalId g) { return std::binary_search(small.begin(), small.end(), g); };
  for (GalId g : big)
    for (GalId h : small)
      if (!in_small(A.compose(A.compose(g, h), A.inverse(g)))) return false;
  for (GalId g : big)
    for (GalId h : big) {
      GalId c = A.compose(A.compose(g, h), A.compose(A.inverse(g), A.inverse(h)));
      if (!in_small(c)) return false;
    }
  return true;
}

// Characters of L^x trivial on N_{K/L}(K^x), for K/L abelian of degree n.
std::vector<MultChar> norm_class_characters(const FieldPtr& k, const FieldPtr& l) {
  int n = k->degree() / l->degree();
  std::int64_t ql1 = l->residue_size() - 1;
  std::int64_t g = std::gcd<std::int64_t>(n, ql1);
  std::vector<MultChar> out;
  for (int a = 0; a < n; ++a)
    for (std::int64_t t = 0; t < g; ++t) {
      MultChar w(l, RootOfUnity(a, n), t * (ql1 / g), l->ambient().zero(l->ambient().full_prec()));
      if (!inflate(w, k).is_trivial()) continue;
      if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
    }
  if (static_cast<int>(out.size()) != n)
    throw std::logic_error("norm class group of an abelian extension has the wrong size");
  return out;
}

void refine_into(const InducedSummand& s, WeilRep& out) {
  const FieldPtr& k = s.chi.field();
  const Ambient& A = k->ambient();
  for (const auto& l : subfields(*k)) {
    if (*l == *k) continue;
    if (!is_normal_abelian(A, l->subgroup(), k->subgroup())) continue;
    auto eta = norm_descent(s.chi, l);
    if (!eta) continue;
    for (const auto& w : norm_class_characters(k, l)) refine_into({*eta * w, s.sl2_dim}, out);
    return;
  }
  out.add(s.chi, s.sl2_dim);
}

}  // namespace

WeilRep refine(const WeilRep& r) {
  WeilRep out;
  for (const auto& s : r.summands()) refine_into(s, out);
  return out;
}

bool rep_equivalent(const WeilRep& a, const WeilRep& b) {
  WeilRep ra = refine(a), rb = refine(b);
  if (rep_dim(ra) != rep_dim(rb)) return false;
  std::vector<InducedSummand> rest = rb.summands();
  for (const auto& s : ra.summands()) {
    auto it = std::find_if(rest.begin(), rest.end(), [&](const InducedSummand& t) {
      return t.sl2_dim == s.sl2_dim && pair_equivalent(s.chi, t.chi);
    });
    if (it == rest.end()) return false;
    rest.erase(it);
  }
  return rest.empty();
}

WeilRep tensor_pairs(const MultChar& chi, const MultChar& eta) {
  WeilRep out;
  for (const auto& tf : tensor_decompose(*chi.field(), *eta.field())) {
    MultChar theta = inflate(conj_by(tf.g, chi), tf.field) * inflate(eta, tf.field);
    out.add(theta);
  }
  return out;
}

WeilRep tensor(const WeilRep& a, const WeilRep& b) {
  WeilRep out;
  for (const auto& s : a.summands())
    for (const auto& t : b.summands()) {
      WeilRep w = tensor_pairs(s.chi, t.chi);
      // Clebsch-Gordan for st_a (x) st_b.
      int lo = std::abs(s.sl2_dim - t.sl2_dim) + 1, hi = s.sl2_dim + t.sl2_dim - 1;
      for (int c = lo; c <= hi; c += 2)
        for (const auto& x : w.summands()) out.add(x.chi, c);
    }
  return out;
}

std::vector<MultChar> restrict_rep(const WeilRep& r, const FieldPtr& l) {
  std::vector<MultChar> out;
  const Ambient& A = l->ambient();
  std::vector<GalId> all(A.group_order());
  std::iota(all.begin(), all.end(), 0);
  for (const auto& s : r.summands()) {
    for (GalId g : embeddings(*s.chi.field())) {
      MultChar c = conj_by(g, s.chi);
      if (!is_subfield(*c.field(), *l)) throw ConfigError("restriction field does not contain every inducing field");
      MultChar cl = inflate(c, l);
      for (int i = 0; i < s.sl2_dim; ++i) out.push_back(cl);
    }
  }
  return out;
}

bool same_character_multiset(std::vector<MultChar> a, std::vector<MultChar> b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    auto it = std::find(b.begin(), b.end(), x);
    if (it == b.end()) return false;
    b.erase(it);
  }
  return true;
}

std::string to_string(GroupTag g) {
  switch (g) {
    case GroupTag::Sp: return "Sp";
    case GroupTag::SO_odd: return "SO_odd";
    case GroupTag::SO_even: return "SO_even";
    case GroupTag::GL: return "GL";
    case GroupTag::G2: return "G2";
  }
  return "?";
}

std::string GParameter::to_string() const {
  std::ostringstream os;
  os << tame::to_string(group) << "(" << n << "): " << std_rep.to_string();
  return os.str();
}

int std_dimension(GroupTag g, int n) {
  switch (g) {
    case GroupTag::Sp: return 2 * n + 1;
    case GroupTag::SO_odd: return 2 * n;
    case GroupTag::SO_even: return 2 * n;
    case GroupTag::GL: return n;
    case GroupTag::G2: return 7;
  }
  return 0;
}

std::optional<Parity> summand_parity(const InducedSummand& s) {
  std::optional<Parity> base;
  const FieldPtr& k = s.chi.field();
  if (k->degree() == 1) {
    if (s.chi.pow(2).is_trivial()) base = Parity::orthogonal;
  } else if (auto sd = is_self_dual(s.chi)) {
    base = sd->parity;
  }
  if (!base) return std::nullopt;
  if (s.sl2_dim % 2 == 0) return *base == Parity::orthogonal ? Parity::symplectic : Parity::orthogonal;
  return base;
}

GParameter std_compose(GroupTag g, int n, WeilRep r) {
  if (rep_dim(r) != std_dimension(g, n))
    throw ConfigError("dimension mismatch: expected " + std::to_string(std_dimension(g, n)) + ", got " +
                      std::to_string(rep_dim(r)));
  if (g != GroupTag::GL) {
    if (!rep_equivalent(r, rep_dual(r))) throw ConfigError("standard representation is not self-dual");
    Parity want = g == GroupTag::SO_odd ? Parity::symplectic : Parity::orthogonal;
    for (const auto& s : r.summands()) {
      auto par = summand_parity(s);
      if (par && *par != want)
        throw ConfigError("parity mismatch: summand " + s.to_string() + " is " + to_string(*par));
    }
    if (g != GroupTag::SO_odd) {
      FieldPtr base = base_field(r.summands().front().chi.field()->ambient_ptr());
      if (!rep_det(r, base).is_trivial()) throw ConfigError("determinant condition fails");
    }
  }
  return {g, n, std::move(r)};
}

bool is_outer_self_conjugate(const WeilRep& r) {
  const auto& parts = r.summands();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto par = summand_parity(parts[i]);
    if (par && *par != Parity::orthogonal) throw ConfigError("representation is not orthogonal");
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (parts[i].sl2_dim == parts[j].sl2_dim && pair_equivalent(parts[i].chi, parts[j].chi))
        throw ConfigError("representation is not multiplicity-free");
  }
  if (!rep_equivalent(r, rep_dual(r))) throw ConfigError("representation is not self-dual");
  for (const auto& s : parts)
    if (s.dim() % 2 == 1 && summand_parity(s)) return true;
  return false;
}

namespace {

std::vector<MultChar> six_weights(const std::vector<MultChar>& chis, const FieldPtr& l) {
  if (chis.size() != 3) throw ConfigError("expected three quadratic inductions");
  std::vector<MultChar> w;
  for (const auto& c : chis) {
    if (c.field()->degree() != 2) throw ConfigError("expected characters of quadratic extensions");
    w.push_back(inflate(c, l));
  }
  for (int i = 0; i < 3; ++i) w.push_back(w[i].dual());
  return w;  // w[i] for e_{i+1}, w[i+3] for e_{-(i+1)}
}

}  // namespace

Wedge3Weights wedge3_pm(const std::vector<MultChar>& chis, const FieldPtr& l) {
  auto w = six_weights(chis, l);
  auto pos = [&](int i) { return w[i]; };
  auto neg = [&](int i) { return w[i + 3]; };
  Wedge3Weights out;
  out.plus.push_back(pos(0) * pos(1) * pos(2));
  out.minus.push_back(neg(0) * neg(1) * neg(2));
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    out.plus.push_back(pos(i) * neg(j) * neg(k));   // u_i^+
    out.minus.push_back(neg(i) * pos(j) * pos(k));  // u_i^-
    // v_i^{+-} = e_i e_j e_{-j} +- e_i e_k e_{-k}: weight of e_i
    out.plus.push_back(pos(i));
    out.minus.push_back(pos(i));
    // v_{-i}^{+-}: weight of e_{-i}
    out.plus.push_back(neg(i));
    out.minus.push_back(neg(i));
  }
  return out;
}

std::vector<MultChar> wedge3_weights(const std::vector<MultChar>& chis, const FieldPtr& l) {
  auto w = six_weights(chis, l);
  std::vector<MultChar> out;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      for (int c = b + 1; c < 6; ++c) out.push_back(w[a] * w[b] * w[c]);
  return out;
}

WeilRep wedge3_4dim(const MultChar& chi) {
  if (chi.field()->degree() != 4) throw ConfigError("expected a degree-4 pair");
  MultChar omega = det_induced(chi);
  WeilRep out;
  out.add(chi.dual() * inflate(omega, chi.field()));
  return out;
}

std::optional<MultChar> unramified_twist_relating(const MultChar& a, const MultChar& b, int max_order) {
  FieldPtr base = base_field(a.field()->ambient_ptr());
  for (int k = 0; k < max_order; ++k) {
    MultChar eta = unramified_character(base, RootOfUnity(k, max_order));
    if (pair_equivalent(twist_by_base(a, eta), b)) return eta;
  }
  return std::nullopt;
}

bool wedge2_equal_via_twist(const MultChar& a, const MultChar& b, int max_order) {
  auto eta = unramified_twist_relating(a, b, max_order);
  if (!eta) return false;
  return pair_equivalent(twist_by_base(a, eta->pow(2)), a);
}

}  // namespace tame
