#pragma once

#include <cstddef>
#include <vector>

#include "hermiwitt/matrix.hpp"
#include "hermiwitt/quaternion.hpp"

namespace hermiwitt {

using DMatrix = Matrix<Quat>;
using LMatrix = Matrix<QuadElem>;
using FMatrix = Matrix<Padic>;

DMatrix rho_transpose(const DMatrix& m);  // rho(M)^T
DMatrix scalar_matrix(std::size_t n, const Quat& x);

// h(v, w) = rho(v)^T M w on column vectors; M = eps * rho(M)^T.
struct HermitianForm {
  int epsilon;
  DMatrix gram;
  std::size_t rank() const { return gram.rows(); }
  const FieldContext& context() const { return gram.any().context(); }
};

struct DiagonalForm {
  int epsilon;
  std::vector<Quat> entries;
  std::size_t rank() const { return entries.size(); }
};

HermitianForm make_form(int epsilon, DMatrix gram);  // checks shape and epsilon, not symmetry
HermitianForm diagonal_form(const DiagonalForm& d);
HermitianForm hyperbolic_plane(const FieldContext& ctx, int epsilon);  // antidiag(1, eps)
HermitianForm orthogonal_sum(const HermitianForm& a, const HermitianForm& b);
HermitianForm congruence(const HermitianForm& h, const DMatrix& s);  // rho(S)^T M S

bool validate(const HermitianForm& h);
Quat evaluate(const HermitianForm& h, const DMatrix& v, const DMatrix& w);
DMatrix sigma_h(const HermitianForm& h, const DMatrix& f);  // adjoint w.r.t. h

struct Diagonalization {
  DMatrix transform;  // columns are the new basis
  DiagonalForm lines;
  std::size_t hyperbolic_pairs = 0;
  DMatrix reduced;  // rho(T)^T M T: lines first, then antidiag(1, eps) blocks
};
Diagonalization diagonalize(const HermitianForm& h);

struct WittDecomposition {
  std::size_t witt_index = 0;
  DiagonalForm anisotropic;
};
WittDecomposition witt_decompose(const HermitianForm& h);

HermitianForm twist(const HermitianForm& h, const DMatrix& gamma);
HermitianForm twist(const HermitianForm& h, const Quat& gamma);

// h_L on the right L-basis (e_1, e_1 pi_D, e_2, e_2 pi_D, ...): the L-component
// of h. Since rho is trivial on L this is L-bilinear.
LMatrix trace_lift_hL(const HermitianForm& h);
std::vector<QuadElem> l_coordinates(const DMatrix& v);  // column vector over D -> L^{2n}
QuadElem l_bilinear(const LMatrix& g, const std::vector<QuadElem>& x, const std::vector<QuadElem>& y);

// left multiplication by g on D^n as a 2n x 2n L-matrix; Nrd = its determinant
LMatrix l_matrix(const DMatrix& g);
Padic reduced_norm(const DMatrix& g);

DMatrix cayley_isometry(const DMatrix& x, const HermitianForm& h);
bool is_isometry(const DMatrix& g, const HermitianForm& h);

}  // namespace hermiwitt
