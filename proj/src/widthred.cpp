#include "qwidth/widthred.hpp"

#include <algorithm>
#include <numeric>

namespace qwidth {

namespace {

RingElement constant(const RingSpec& ring, long v) { return RingElement::from_integer(ring, v); }

[[noreturn]] void internal(const std::string& what) { throw Error(ErrorKind::InternalError, what); }

void require_supported_ring(const RingSpec& ring) {
  if (ring.kind() == RingKind::IntegersMod && !is_prime(ring.parameter()))
    throw Error(ErrorKind::UnsupportedRing, "reduction needs a domain; " + ring.descriptor() + " is not one");
}

void require_congruence_input(const SqMatrix& sigma, const Ideal& q) {
  if (!(q.ring() == sigma.ring())) throw Error(ErrorKind::MismatchedRings, "ideal and matrix rings differ");
  if (q.is_zero()) throw Error(ErrorKind::ZeroIdeal, "q must be nonzero");
  if (!determinant(sigma).is_one()) throw Error(ErrorKind::NotSL, "determinant is not 1");
  if (!is_congruent_to_identity(sigma, q)) throw Error(ErrorKind::NotCongruent, "sigma is not I mod q");
  if (is_central(sigma)) throw Error(ErrorKind::CentralInput, "sigma is central");
}

void require_reduction_input(const SqMatrix& sigma, const Ideal& q) {
  require_supported_ring(sigma.ring());
  if (sigma.dim() < 3) throw Error(ErrorKind::DimensionMismatch, "reduction needs n >= 3");
  require_congruence_input(sigma, q);
}

ReductionTrace start(const SqMatrix& g, const Ideal& q) { return ReductionTrace{g, q, std::nullopt, SGroup::Elementary, 0, {}}; }

bool in_g1(const SqMatrix& g) {
  const std::size_t n = g.dim();
  for (std::size_t k = 1; k < n; ++k)
    if (!g(n, k).is_zero()) return false;
  return g(n, n).is_one();
}

bool in_g2(const SqMatrix& g) {
  for (std::size_t k = 2; k <= g.dim(); ++k)
    if (!g(k, 1).is_zero()) return false;
  return g(1, 1).is_one();
}

// Lower right (n-1) block is the identity.
bool lower_block_identity(const SqMatrix& g) {
  for (std::size_t a = 2; a <= g.dim(); ++a)
    for (std::size_t b = 2; b <= g.dim(); ++b)
      if (a == b ? !g(a, b).is_one() : !g(a, b).is_zero()) return false;
  return true;
}

bool upper_block_identity(const SqMatrix& g) {
  for (std::size_t a = 1; a < g.dim(); ++a)
    for (std::size_t b = 1; b < g.dim(); ++b)
      if (a == b ? !g(a, b).is_one() : !g(a, b).is_zero()) return false;
  return true;
}

bool is_elementary_matrix(const SqMatrix& g) {
  std::size_t off = 0;
  for (std::size_t a = 1; a <= g.dim(); ++a)
    for (std::size_t b = 1; b <= g.dim(); ++b) {
      if (a == b && !g(a, b).is_one()) return false;
      if (a != b && !g(a, b).is_zero()) ++off;
    }
  return off == 1;
}

// g = [[I, v], [0, 1]]
bool column_form(const SqMatrix& g) { return in_g1(g) && upper_block_identity(g); }
// g = [[1, w], [0, I]]
bool row_form(const SqMatrix& g) { return in_g2(g) && lower_block_identity(g); }

std::vector<ElemFactor> concat(std::initializer_list<std::vector<ElemFactor>> parts) {
  std::vector<ElemFactor> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// Case 1 of the first stage: sigma commutes with tau, so its first column is u e_1.
void commuting_case(ReductionTrace& trace, const RingElement& p, const std::string& tag) {
  const SqMatrix g = trace.output();
  const std::size_t n = g.dim();
  for (std::size_t k = 2; k <= n; ++k)
    if (!g(k, 1).is_zero()) internal("first column is not u e_1 in the commuting case");
  for (std::size_t a = 2; a <= n; ++a)
    for (std::size_t b = 2; b <= n; ++b) {
      if (a == b) continue;
      const SqMatrix s = elementary(a, b, p, n);
      if (lower_block_identity(commutator(g, s))) continue;
      trace.push(QOpKind::CommRight, s, {{a, b, p}}, tag + ".noncentral_block");
      return;
    }
  // Lower block is scalar, so v != 0.
  for (std::size_t a = 2; a <= n; ++a) {
    if (g(1, a).is_zero()) continue;
    const std::size_t b = a == 2 ? 3 : 2;
    trace.push(QOpKind::CommRight, elementary(a, b, p, n), {{a, b, p}}, tag + ".scalar_block");
    return;
  }
  internal("commuting case reached a central matrix");
}

// Ring elements in a fixed order, used to build search shells.
RingElement nth_element(const RingSpec& ring, std::size_t k) {
  switch (ring.kind()) {
    case RingKind::IntegersMod:
      return constant(ring, static_cast<long>(k));
    case RingKind::PolyOverFiniteField: {
      std::vector<mpz_class> coeffs;
      const unsigned long p = ring.parameter().get_ui();
      for (std::size_t r = k; r > 0; r /= p) coeffs.emplace_back(static_cast<unsigned long>(r % p));
      return RingElement::from_coefficients(ring, std::move(coeffs));
    }
    default: {
      const long mag = static_cast<long>((k + 1) / 2);
      return constant(ring, k % 2 ? mag : -mag);
    }
  }
}

}  // namespace

SRWitness unimodular_square_shift(std::span<const RingElement> alpha, std::size_t bound) {
  if (alpha.size() < 2) throw Error(ErrorKind::DimensionMismatch, "need at least two coordinates");
  if (!is_unimodular(alpha)) throw Error(ErrorKind::NotSL, "column is not unimodular");
  const RingSpec& ring = alpha[0].ring();
  const std::size_t m = alpha.size() - 1;
  const RingElement an2 = alpha[m] * alpha[m];
  // Shells run out in Z/m; elsewhere only the candidate bound stops the search.
  const std::size_t limit = ring.kind() == RingKind::IntegersMod ? ring.parameter().get_ui() : SIZE_MAX;

  std::size_t tried = 0;
  std::vector<std::size_t> idx(m);
  for (std::size_t r = 0; r < limit; ++r) {
    // All index vectors in [0, r]^m whose maximum is r.
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      if (r == 0 || *std::max_element(idx.begin(), idx.end()) == r) {
        if (tried++ >= bound)
          throw Error(ErrorKind::SearchExhausted, "no stable range witness among " + std::to_string(bound) + " candidates");
        std::vector<RingElement> t, shifted;
        for (std::size_t k = 0; k < m; ++k) {
          t.push_back(nth_element(ring, idx[k]));
          shifted.push_back(alpha[k] + t.back() * an2);
        }
        GcdResult cert = extended_gcd(shifted);
        if (unit_check(cert.g)) return SRWitness{std::move(t), std::move(shifted), std::move(cert)};
      }
      std::size_t pos = 0;
      while (pos < m && idx[pos] == r) idx[pos++] = 0;
      if (pos == m) break;
      ++idx[pos];
    }
  }
  throw Error(ErrorKind::SearchExhausted, "no stable range witness in the finite ring after " + std::to_string(tried) + " candidates");
}

AffineReduction reduce_to_affine(const SqMatrix& sigma, const Ideal& q, std::uint64_t seed) {
  require_reduction_input(sigma, q);
  ReductionTrace trace = start(sigma, q);
  trace.seed = seed;
  if (in_g1(sigma)) return {std::move(trace), AffineCopy::G1};
  if (in_g2(sigma)) return {std::move(trace), AffineCopy::G2};

  const std::size_t n = sigma.dim();
  const RingSpec& ring = sigma.ring();
  const RingElement& p = q.generator();
  const SqMatrix tau = elementary(1, 2, p, n);
  const ElemFactor tau_f{1, 2, p};

  if (commutator(sigma, tau).is_identity()) {
    commuting_case(trace, p, "step1.case1");
  } else {
    const std::vector<RingElement> alpha = sigma.column(1);
    const SRWitness w = unimodular_square_shift(alpha);
    const RingElement& an = alpha[n - 1];
    std::vector<ElemFactor> m_f;
    for (std::size_t k = 1; k < n; ++k)
      if (!(an * w.t[k - 1]).is_zero()) m_f.push_back({k, n, an * w.t[k - 1]});
    const SqMatrix M = multiply_factors(m_f, ring, n);
    const SqMatrix M_inv = mat_inv(M);

    // Bezout coefficients for the shifted prefix, scaled so they sum to 1.
    const RingElement g_inv = *unit_check(w.certificate.g);
    std::vector<ElemFactor> lam_inv_f;
    for (std::size_t k = 1; k < n; ++k) {
      const RingElement dk = w.certificate.coeffs[k - 1] * g_inv;
      if (!(an * dk).is_zero()) lam_inv_f.push_back({n, k, -(an * dk)});
    }
    const SqMatrix lam_inv = multiply_factors(lam_inv_f, ring, n);

    // [M sigma M^-1, tau] conjugated by lambda^-1 equals the conjugate by
    // lambda^-1 M of [sigma, M^-1 tau M].
    trace.push(QOpKind::CommRight, M_inv * tau * M, concat({inverse_factors(m_f), {tau_f}, m_f}),
               "step1.case2.shift_commutator");
    trace.push(QOpKind::Conjugate, lam_inv * M, concat({lam_inv_f, m_f}), "step1.case2.bezout_conjugate");
    const SqMatrix rho = trace.output();
    if (!rho(n, 1).is_zero() || !rho(n, n).is_one()) internal("bezout conjugate has the wrong last row");
    if (is_central(rho)) internal("rho is central");
    if (commutator(rho, tau).is_identity()) {
      commuting_case(trace, p, "step1.case2.rho_commutes");
    } else {
      trace.push(QOpKind::CommRight, tau, {tau_f}, "step1.case2.rho_comm_tau");
    }
  }
  const SqMatrix& out = trace.output();
  if (is_central(out)) internal("first stage produced a central matrix");
  if (in_g1(out)) return {std::move(trace), AffineCopy::G1};
  if (in_g2(out)) return {std::move(trace), AffineCopy::G2};
  internal("first stage left both affine copies");
}

ReductionTrace strip_to_translation(const SqMatrix& g, AffineCopy location, const Ideal& q) {
  if (is_central(g)) throw Error(ErrorKind::CentralInput, "matrix is central");
  const std::size_t n = g.dim();
  const RingElement& p = q.generator();
  ReductionTrace trace = start(g, q);
  if (location == AffineCopy::G1) {
    if (!in_g1(g)) throw Error(ErrorKind::BadIndices, "matrix is not in G1");
    if (upper_block_identity(g)) return trace;
    for (std::size_t k = 1; k < n; ++k) {
      bool moved = false;
      for (std::size_t a = 1; a < n; ++a)
        if (a == k ? !g(a, k).is_one() : !g(a, k).is_zero()) moved = true;
      if (!moved) continue;
      trace.push(QOpKind::CommRight, elementary(k, n, p, n), {{k, n, p}}, "step2.g1");
      break;
    }
    if (!column_form(trace.output()) || trace.output().is_identity()) internal("second stage missed the column form");
  } else {
    if (!in_g2(g)) throw Error(ErrorKind::BadIndices, "matrix is not in G2");
    if (lower_block_identity(g)) return trace;
    const SqMatrix inv = mat_inv(g);
    for (std::size_t k = 2; k <= n; ++k) {
      bool moved = false;
      for (std::size_t b = 2; b <= n; ++b)
        if (b == k ? !inv(k, b).is_one() : !inv(k, b).is_zero()) moved = true;
      if (!moved) continue;
      trace.push(QOpKind::CommRight, elementary(1, k, p, n), {{1, k, p}}, "step2.g2");
      break;
    }
    if (!row_form(trace.output()) || trace.output().is_identity()) internal("second stage missed the row form");
  }
  return trace;
}

ReductionTrace translation_to_elementary(const SqMatrix& g, const Ideal& q) {
  if (g.is_identity()) throw Error(ErrorKind::CentralInput, "matrix is the identity");
  const std::size_t n = g.dim();
  const RingElement& p = q.generator();
  ReductionTrace trace = start(g, q);
  if (column_form(g)) {
    std::size_t pick = 0;
    for (std::size_t a = n - 1; a >= 2; --a)
      if (!g(a, n).is_zero()) pick = a;
    if (pick == 0) return trace;  // already v_1 e_1
    trace.push(QOpKind::CommRight, elementary(1, pick, p, n), {{1, pick, p}}, "step3.column");
  } else if (row_form(g)) {
    std::size_t pick = 0;
    for (std::size_t b = n; b >= 3; --b)
      if (!g(1, b).is_zero()) pick = b;
    if (pick == 0) return trace;  // already w_2 e_12
    trace.push(QOpKind::CommRight, elementary(pick, 2, p, n), {{pick, 2, p}}, "step3.row");
  } else {
    throw Error(ErrorKind::BadIndices, "matrix is not a translation");
  }
  return trace;
}

ReductionTrace relocate_elementary(const SqMatrix& g, std::size_t i, std::size_t j, const Ideal& q) {
  const std::size_t n = g.dim();
  if (i == j || i < 1 || j < 1 || i > n || j > n) throw Error(ErrorKind::BadIndices, "bad target");
  if (g.is_identity()) throw Error(ErrorKind::TrivialInput, "r = 0");
  std::size_t k = 0, l = 0;
  for (std::size_t a = 1; a <= n; ++a)
    for (std::size_t b = 1; b <= n; ++b) {
      if (a == b) {
        if (!g(a, b).is_one()) throw Error(ErrorKind::BadIndices, "matrix is not elementary");
      } else if (!g(a, b).is_zero()) {
        if (k != 0) throw Error(ErrorKind::BadIndices, "matrix is not elementary");
        k = a;
        l = b;
      }
    }
  const RingElement& p = q.generator();
  ReductionTrace trace = start(g, q);
  auto comm_right = [&](std::size_t a, std::size_t b, const char* tag) {
    trace.push(QOpKind::CommRight, elementary(a, b, p, n), {{a, b, p}}, tag);
  };
  auto comm_left = [&](std::size_t a, std::size_t b, const char* tag) {
    trace.push(QOpKind::CommLeft, elementary(a, b, p, n), {{a, b, p}}, tag);
  };
  // [I + p e_ik, I + r e_kj] = I + pr e_ij and [I + r e_il, I + p e_lj] = I + rp e_ij.
  auto finish = [&](std::size_t kk, std::size_t ll) {
    if (kk == i && ll == j) return;
    if (ll == j) comm_left(i, kk, "step4.case1.same_col");
    else comm_right(ll, j, "step4.case1.same_row");
  };
  if (k == i || l == j) {
    finish(k, l);
  } else if (k != j) {
    comm_right(l, j, "step4.case2.distinct");
    finish(k, j);
  } else {
    std::size_t h = i;
    if (h == l)
      for (h = 1; h == k || h == l; ++h) {
      }
    if (h == i) {
      comm_left(h, k, "step4.case2.k_eq_j.h_eq_i");
      finish(h, l);
    } else {
      comm_left(h, k, "step4.case2.k_eq_j.h_ne_i");
      comm_right(l, j, "step4.case2.k_eq_j.h_ne_i");
      finish(h, j);
    }
  }
  if (!is_nontrivial_root(trace.output(), i, j, q)) internal("relocation missed the target root subgroup");
  return trace;
}

ReductionTrace reduce_full(const SqMatrix& sigma, const Ideal& q, std::size_t i, std::size_t j, std::uint64_t seed) {
  const std::size_t n = sigma.dim();
  if (i == j || i < 1 || j < 1 || i > n || j > n) throw Error(ErrorKind::BadIndices, "bad target");
  if (is_elementary_matrix(sigma)) {
    require_reduction_input(sigma, q);
    ReductionTrace trace = start(sigma, q);
    trace.seed = seed;
    trace.target = std::pair{i, j};
    trace.append(relocate_elementary(sigma, i, j, q));
    return trace;
  }
  AffineReduction first = reduce_to_affine(sigma, q, seed);
  ReductionTrace trace = std::move(first.trace);
  trace.target = std::pair{i, j};
  trace.append(strip_to_translation(trace.output(), first.location, q));
  trace.append(translation_to_elementary(trace.output(), q));
  trace.append(relocate_elementary(trace.output(), i, j, q));
  if (!is_nontrivial_root(trace.output(), i, j, q)) internal("reduction missed the target");
  if (trace.steps.size() > 9 || trace.word_length() > 512) internal("reduction exceeded its budget");
  return trace;
}

std::vector<RingElement> se4_unit_candidates(const RingSpec& ring) {
  std::vector<RingElement> out;
  switch (ring.kind()) {
    case RingKind::Integers:
      out = {constant(ring, 1), constant(ring, -1)};
      break;
    case RingKind::IntegersMod: {
      const unsigned long m = ring.parameter().get_ui();
      for (unsigned long k = 1; k < m; ++k)
        if (std::gcd(k, m) == 1) out.push_back(RingElement::from_integer(ring, mpz_class(k)));
      break;
    }
    case RingKind::LocalizedIntegers:
      for (long k = 0; k <= 8; ++k)
        for (long e : k == 0 ? std::vector<long>{0} : std::vector<long>{k, -k})
          for (long sign : {1, -1}) out.push_back(RingElement::from_localized(ring, sign, e));
      break;
    case RingKind::PolyOverFiniteField: {
      const unsigned long p = ring.parameter().get_ui();
      for (unsigned long k = 1; k < p; ++k) out.push_back(RingElement::from_integer(ring, mpz_class(k)));
      break;
    }
  }
  return out;
}

namespace {

// E12 side; returns nothing when no candidate unit yields a nontrivial element.
std::optional<ReductionTrace> se4_e12(const SqMatrix& sigma, const Ideal& q, const std::string& tag) {
  const RingSpec& ring = sigma.ring();
  const RingElement one = constant(ring, 1);
  const RingElement &a = sigma(1, 1), &c = sigma(2, 1);
  const Ideal c2 = Ideal::principal(c * c);
  const SqMatrix sigma_inv = mat_inv(sigma);
  for (const RingElement& u : se4_unit_candidates(ring)) {
    if (!c2.contains(u - one)) continue;
    const RingElement u4 = u.pow(4);
    std::optional<RingElement> x = c.is_zero() ? std::optional<RingElement>(q.generator()) : divide_exact(u4 - one, c);
    if (!x) continue;
    const RingElement t = a * *x;
    const RingElement u_inv = *unit_check(u);
    const RingElement u2 = u * u, u_2 = u_inv * u_inv;
    const std::vector<RingElement> diag{u2, u_2}, diag_inv{u_2, u2};
    const SqMatrix D = SqMatrix::diagonal(diag), D_inv = SqMatrix::diagonal(diag_inv);
    const SqMatrix s1 = D_inv * elementary(1, 2, t, 2);
    const SqMatrix s2 = D * sigma_inv;
    if (!is_congruent_to_identity(s1, q) || !is_congruent_to_identity(s2, q)) continue;

    ReductionTrace trace{sigma, q, std::nullopt, SGroup::Congruence, 0, {}};
    trace.push(QOpKind::CommRight, s1, {}, tag + ".conjugate_pair");
    trace.push(QOpKind::Conjugate, s2, {}, tag + ".conjugate_pair");
    const SqMatrix S = conjugate(sigma, elementary(1, 2, t, 2));
    const SqMatrix T = conjugate(sigma, D);
    if (!(trace.output() == mat_inv(S) * T)) internal("S^-1 T mismatch");
    if (is_nontrivial_root(trace.output(), 1, 2, q)) return trace;

    const RingElement u_4 = u_inv.pow(4);
    for (const RingElement& w : {RingElement(ring), q.generator()}) {
      const SqMatrix W = SqMatrix::from_rows(ring, {{u4, w}, {RingElement(ring), u_4}});
      if (!is_congruent_to_identity(W, q)) continue;
      if (!is_nontrivial_root(commutator(trace.output(), W), 1, 2, q)) continue;
      trace.push(QOpKind::CommRight, W, {}, tag + ".final_commutator");
      return trace;
    }
  }
  return std::nullopt;
}

}  // namespace

ReductionTrace unit_trick_se4(const SqMatrix& sigma, const Ideal& q, Se4Side side) {
  if (sigma.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "the unit trick works in SL_2");
  require_congruence_input(sigma, q);
  const RingSpec& ring = sigma.ring();
  const std::size_t candidates = se4_unit_candidates(ring).size();
  if (side == Se4Side::E12) {
    if (auto trace = se4_e12(sigma, q, "se4.e12")) return *trace;
    throw Error(ErrorKind::NoUnitFound, "no unit among " + std::to_string(candidates) +
                                            " candidates u = 1 mod c^2 gives a nontrivial element of E12(q)");
  }
  // phi(g) = w^-1 g w swaps the roles of E12 and E21.
  const SqMatrix w = SqMatrix::from_integers(ring, {{0, 1}, {-1, 0}});
  const SqMatrix w_inv = mat_inv(w);
  const auto image = se4_e12(w_inv * sigma * w, q, "se4.e21");
  if (!image)
    throw Error(ErrorKind::NoUnitFound, "no unit among " + std::to_string(candidates) +
                                            " candidates u = 1 mod b^2 gives a nontrivial element of E21(q)");
  ReductionTrace trace{sigma, q, std::nullopt, SGroup::Congruence, 0, {}};
  for (const auto& st : image->steps) trace.push(st.kind, w * st.s * w_inv, {}, st.tag);
  if (!is_nontrivial_root(trace.output(), 2, 1, q)) internal("unit trick missed E21");
  return trace;
}

}  // namespace qwidth
