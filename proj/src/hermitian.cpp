#include "hermiwitt/hermitian.hpp"

#include <algorithm>
#include <optional>

#include "hermiwitt/errors.hpp"
#include "hermiwitt/wittclass.hpp"

namespace hermiwitt {

DMatrix rho_transpose(const DMatrix& m) {
  DMatrix t(m.cols(), m.rows(), m.any());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j).rho();
  return t;
}

DMatrix scalar_matrix(std::size_t n, const Quat& x) {
  DMatrix m(n, n, Quat::zero(x.context()));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = x;
  return m;
}

HermitianForm make_form(int epsilon, DMatrix gram) {
  if (epsilon != 1 && epsilon != -1) throw InvalidParameter("epsilon must be +1 or -1");
  if (gram.rows() != gram.cols() || gram.rows() == 0) throw InvalidParameter("Gram matrix must be square and nonempty");
  return HermitianForm{epsilon, std::move(gram)};
}

HermitianForm diagonal_form(const DiagonalForm& d) {
  if (d.entries.empty()) throw InvalidParameter("empty diagonal form");
  return make_form(d.epsilon, DMatrix::diagonal(d.entries));
}

HermitianForm hyperbolic_plane(const FieldContext& ctx, int epsilon) {
  DMatrix g(2, 2, Quat::zero(ctx));
  g(0, 1) = Quat::one(ctx);
  g(1, 0) = Quat::from_F(Padic(ctx, epsilon));
  return make_form(epsilon, g);
}

HermitianForm orthogonal_sum(const HermitianForm& a, const HermitianForm& b) {
  if (a.epsilon != b.epsilon) throw EpsilonMismatch("orthogonal sum of forms with different epsilon");
  const std::size_t n = a.rank(), m = b.rank();
  DMatrix g(n + m, n + m, Quat::zero(a.context()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram(i, j);
  return make_form(a.epsilon, g);
}

HermitianForm congruence(const HermitianForm& h, const DMatrix& s) {
  return make_form(h.epsilon, rho_transpose(s) * h.gram * s);
}

bool validate(const HermitianForm& h) {
  if (h.gram.rows() != h.gram.cols()) return false;
  const Padic eps(h.context(), h.epsilon);
  for (std::size_t i = 0; i < h.rank(); ++i)
    for (std::size_t j = 0; j < h.rank(); ++j)
      if (h.gram(i, j) != h.gram(j, i).rho() * eps) return false;
  return true;
}

Quat evaluate(const HermitianForm& h, const DMatrix& v, const DMatrix& w) {
  return (rho_transpose(v) * h.gram * w)(0, 0);
}

DMatrix sigma_h(const HermitianForm& h, const DMatrix& f) {
  return inverse(h.gram) * rho_transpose(f) * h.gram;
}

// ---------------------------------------------------------------------------

Diagonalization diagonalize(const HermitianForm& h) {
  if (!validate(h)) throw InvalidParameter("Gram matrix is not epsilon-hermitian");
  const std::size_t n = h.rank();
  const FieldContext& ctx = h.context();
  const Padic eps(ctx, h.epsilon);
  DMatrix t = DMatrix::identity(n, h.gram.any());
  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;
  std::vector<std::size_t> line_cols, pair_cols;
  std::vector<Quat> lines;
  std::size_t pairs = 0;

  auto gram = [&]() { return rho_transpose(t) * h.gram * t; };
  auto col_axpy = [&](std::size_t dst, std::size_t src, const Quat& c) {
    // column dst -= column src * c
    for (std::size_t r = 0; r < n; ++r) t(r, dst) = t(r, dst) - t(r, src) * c;
  };

  while (!active.empty()) {
    DMatrix g = gram();
    std::optional<std::size_t> k;
    int best = 0;
    for (auto i : active) {
      if (g(i, i).is_zero()) continue;
      int v = g(i, i).nu_D();
      if (!k || v < best) {
        k = i;
        best = v;
      }
    }
    if (k) {
      Quat dinv = g(*k, *k).inverse();
      for (auto j : active)
        if (j != *k) col_axpy(j, *k, dinv * g(*k, j));
      lines.push_back(g(*k, *k));
      line_cols.push_back(*k);
      active.erase(std::find(active.begin(), active.end(), *k));
      continue;
    }
    // every remaining diagonal value vanishes: split off a hyperbolic pair
    std::optional<std::pair<std::size_t, std::size_t>> pr;
    for (std::size_t a = 0; a < active.size() && !pr; ++a)
      for (std::size_t b = a + 1; b < active.size() && !pr; ++b)
        if (!g(active[a], active[b]).is_zero()) pr = std::make_pair(active[a], active[b]);
    if (!pr) throw DegenerateForm("radical is nonzero at tracked precision");
    auto [i, j] = *pr;
    Quat minv = g(i, j).inverse();
    for (std::size_t r = 0; r < n; ++r) t(r, j) = t(r, j) * minv;
    g = gram();
    for (auto w : active) {
      if (w == i || w == j) continue;
      Quat cj = eps * g(j, w);
      Quat ci = g(i, w);
      col_axpy(w, i, cj);
      col_axpy(w, j, ci);
    }
    pair_cols.push_back(i);
    pair_cols.push_back(j);
    ++pairs;
    active.erase(std::find(active.begin(), active.end(), i));
    active.erase(std::find(active.begin(), active.end(), j));
  }

  DMatrix ordered(n, n, h.gram.any());
  std::size_t c = 0;
  for (auto col : line_cols) ordered.set_column(c++, t.column(col));
  for (auto col : pair_cols) ordered.set_column(c++, t.column(col));
  DMatrix reduced = rho_transpose(ordered) * h.gram * ordered;

  // certify the block shape
  const std::size_t nl = lines.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      bool allowed = (a == b && a < nl);
      if (a >= nl && b >= nl) {
        std::size_t ba = (a - nl) / 2, bb = (b - nl) / 2;
        allowed = (ba == bb) && a != b;
      }
      if (!allowed && !reduced(a, b).is_zero())
        throw PrecisionExhausted("elimination residue survived at tracked precision");
    }
  for (std::size_t q = 0; q < pairs; ++q) {
    std::size_t a = nl + 2 * q;
    if (reduced(a, a + 1) != Quat::one(ctx)) throw PrecisionExhausted("hyperbolic pair not normalized");
  }
  return Diagonalization{ordered, DiagonalForm{h.epsilon, lines}, pairs, reduced};
}

WittDecomposition witt_decompose(const HermitianForm& h) {
  Diagonalization d = diagonalize(h);
  std::size_t index = d.hyperbolic_pairs;
  const auto& e = d.lines.entries;
  std::vector<bool> used(e.size(), false);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (used[i]) continue;
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (used[j]) continue;
      if (is_isotropic(DiagonalForm{h.epsilon, {e[i], e[j]}})) {
        used[i] = used[j] = true;
        ++index;
        break;
      }
    }
  }
  DiagonalForm rest{h.epsilon, {}};
  for (std::size_t i = 0; i < e.size(); ++i)
    if (!used[i]) rest.entries.push_back(e[i]);
  if (rest.rank() > 3) throw OracleInconclusive("more than three pairwise anisotropic lines");
  if (rest.rank() == 3 && is_isotropic(rest)) throw OracleInconclusive("rank-3 remainder is isotropic but no pair splits");
  return WittDecomposition{index, rest};
}

// ---------------------------------------------------------------------------

HermitianForm twist(const HermitianForm& h, const DMatrix& gamma) {
  if (gamma.rows() != h.rank() || gamma.cols() != h.rank()) throw InvalidParameter("twist: shape mismatch");
  (void)inverse(gamma);  // throws Singular
  DMatrix adj = sigma_h(h, gamma);
  int eps;
  if (adj == gamma)
    eps = h.epsilon;
  else if (adj == -gamma)
    eps = -h.epsilon;
  else
    throw NotSelfAdjoint("gamma is neither symmetric nor skew for sigma_h");
  return make_form(eps, h.gram * gamma);
}

HermitianForm twist(const HermitianForm& h, const Quat& gamma) { return twist(h, scalar_matrix(h.rank(), gamma)); }

LMatrix trace_lift_hL(const HermitianForm& h) {
  if (!validate(h)) throw InvalidParameter("Gram matrix is not epsilon-hermitian");
  const std::size_t n = h.rank();
  const auto& L = h.context().unramified();
  LMatrix out(2 * n, 2 * n, QuadElem(L, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const QuadElem& a = h.gram(i, j).a();
      const QuadElem& b = h.gram(i, j).b();
      out(2 * i, 2 * j) = a;
      out(2 * i, 2 * j + 1) = b.shift(1);
      out(2 * i + 1, 2 * j) = b.conj().shift(1);
      out(2 * i + 1, 2 * j + 1) = a.conj().shift(1);
    }
  if (determinant(out).is_zero()) throw DegenerateForm("h_L is degenerate");
  return out;
}

std::vector<QuadElem> l_coordinates(const DMatrix& v) {
  std::vector<QuadElem> out;
  for (std::size_t i = 0; i < v.rows(); ++i) {
    // a + b pi = a + pi tau(b)
    out.push_back(v(i, 0).a());
    out.push_back(v(i, 0).b().conj());
  }
  return out;
}

QuadElem l_bilinear(const LMatrix& g, const std::vector<QuadElem>& x, const std::vector<QuadElem>& y) {
  QuadElem acc = zero_like(g.any());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) acc += x[i] * g(i, j) * y[j];
  return acc;
}

LMatrix l_matrix(const DMatrix& g) {
  const std::size_t n = g.rows();
  if (n != g.cols()) throw InvalidParameter("l_matrix of a non-square matrix");
  LMatrix out(2 * n, 2 * n, QuadElem(g.any().context().unramified(), 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const QuadElem& a = g(i, j).a();
      const QuadElem& b = g(i, j).b();
      out(2 * i, 2 * j) = a;
      out(2 * i, 2 * j + 1) = b.shift(1);
      out(2 * i + 1, 2 * j) = b.conj();
      out(2 * i + 1, 2 * j + 1) = a.conj();
    }
  return out;
}

Padic reduced_norm(const DMatrix& g) {
  QuadElem d = determinant(l_matrix(g));
  if (!d.b().is_zero()) throw PrecisionExhausted("reduced norm left F at tracked precision");
  return d.a();
}

DMatrix cayley_isometry(const DMatrix& x, const HermitianForm& h) {
  if (x.rows() != h.rank() || x.cols() != h.rank()) throw InvalidParameter("cayley: shape mismatch");
  if (!(rho_transpose(x) * h.gram + h.gram * x).is_zero()) throw NotSkewAdjoint("sigma_h(X) != -X");
  DMatrix id = DMatrix::identity(h.rank(), x.any());
  return (id + x) * inverse(id - x);
}

bool is_isometry(const DMatrix& g, const HermitianForm& h) { return rho_transpose(g) * h.gram * g == h.gram; }

}  // namespace hermiwitt
