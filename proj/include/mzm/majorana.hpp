#pragma once

#include <string>
#include <vector>

#include "mzm/pauli.hpp"

namespace mzm {

// Ordered Majorana monomial gamma_{i1}...gamma_{ik}, indices from {1,...,2L},
// strictly increasing in canonical form. gamma^2 = 1, {g_k, g_l} = 2 d_{kl}.
struct MajoranaMonomial {
  cplx coeff{1.0, 0.0};
  std::vector<int> indices;
};

struct MajoranaOperatorSum {
  std::vector<MajoranaMonomial> terms;

  MajoranaOperatorSum() = default;
  explicit MajoranaOperatorSum(std::vector<MajoranaMonomial> t)
      : terms(std::move(t)) {}
  bool empty() const { return terms.empty(); }
};

// Sorts each monomial's indices by anticommutation (sign per swap) and
// collapses repeated indices via gamma^2 = 1; merges and drops zero terms.
MajoranaOperatorSum majorana_canonicalize(const MajoranaOperatorSum& m,
                                          int max_index);

MajoranaOperatorSum majorana_add(const MajoranaOperatorSum& a,
                                 const MajoranaOperatorSum& b, int max_index);
MajoranaOperatorSum majorana_multiply(const MajoranaOperatorSum& a,
                                      const MajoranaOperatorSum& b,
                                      int max_index);
MajoranaOperatorSum majorana_scale(const MajoranaOperatorSum& a, cplx factor);
MajoranaOperatorSum majorana_adjoint(const MajoranaOperatorSum& a,
                                     int max_index);

// The JW sign convention is not fixed by the protocol; both assignments of the
// on-site letter for odd-index Majoranas are supported.
enum class JWConvention {
  A,  // gamma_{2j-1} -> Z...Z X_j, gamma_{2j} -> Z...Z Y_j
  B,  // gamma_{2j-1} -> Z...Z Y_j, gamma_{2j} -> Z...Z X_j
};

// Pauli-string image of a single Majorana operator under a convention.
PauliString jw_gamma(int index, JWConvention conv, int sites);

OperatorSum jordan_wigner(const MajoranaOperatorSum& m, JWConvention conv,
                          int sites);

// Fermion mode operators c_j = (gamma_{2j-1} + i gamma_{2j}) / 2.
MajoranaOperatorSum annihilation_op(int site, int sites);
MajoranaOperatorSum creation_op(int site, int sites);

// The three-fermion braiding schedule, verbatim:
//   H0^MF = i(g2 g3 + g4 g5)
//   H1^MF = i(g4 g5 + 1/2 g1 g2)
//   H2^MF = i(g4 g5 + g2 g6)
struct KitaevHamiltonians {
  MajoranaOperatorSum h0, h1, h2;
};
KitaevHamiltonians kitaev_hamiltonians(int sites = 3);

// The printed spin Hamiltonians; normative for all simulations:
//   H0 = -(X1 X2 + X2 X3)
//   H1 = -X2 X3 + 1/2 (Z1 + 1)
//   H2 = -(X2 X3 + X1 Z2 Y3)
struct SpinHamiltonians {
  OperatorSum h0, h1, h2;
};
SpinHamiltonians spin_hamiltonians(int sites = 3);

// JW image of total fermion parity: the all-Z string.
OperatorSum parity_operator(int sites);

// Conjugation by X on site 1 (flips the sign of site-1 Y and Z letters).
// Reconciles the convention-A JW image of H1^MF with the printed H1 up to
// the constant +1/2.
OperatorSum site1_relabel(const OperatorSum& op);

struct SpectraMatchResult {
  bool match = false;
  double max_deviation = 0.0;
};
SpectraMatchResult spectra_match(const DenseOperator& a, const DenseOperator& b,
                                 double tol);

// Local noise on fermion site 1, both pictures. The spin forms are the
// printed ones; the fermionic forms map onto them under convention A up to
// the documented relabeling/adjoint discrepancy.
struct ErrorOperator {
  enum class Kind { Flip, Phase };
  Kind kind;
  int site;
  MajoranaOperatorSum fermionic;
  OperatorSum spin;
};

// `coeff_re coeff_im i1 i2 ... ik` per line.
std::string format_majorana_sum(const MajoranaOperatorSum& m);
MajoranaOperatorSum parse_majorana_sum(const std::string& text, int max_index);

}  // namespace mzm
