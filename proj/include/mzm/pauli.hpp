#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace mzm {

using cplx = std::complex<double>;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

// A weighted Pauli string on L sites. Closed under multiplication: the
// product of two strings is again a single string with the phase folded
// into the coefficient.
struct PauliString {
  cplx coeff{1.0, 0.0};
  std::vector<Pauli> letters;

  std::size_t sites() const { return letters.size(); }
  bool is_identity() const;
};

PauliString pauli_mul(const PauliString& a, const PauliString& b);

// Weighted sum of Pauli strings. Canonical form: terms merged by letter
// sequence, zero terms dropped, lexicographic order on letters.
struct OperatorSum {
  std::vector<PauliString> terms;

  OperatorSum() = default;
  explicit OperatorSum(std::vector<PauliString> t) : terms(std::move(t)) {}

  std::size_t sites() const;  // throws on empty or ragged term lengths
  bool empty() const { return terms.empty(); }
};

OperatorSum canonicalize(const OperatorSum& op);
OperatorSum add(const OperatorSum& a, const OperatorSum& b);
OperatorSum subtract(const OperatorSum& a, const OperatorSum& b);
OperatorSum scale(const OperatorSum& a, cplx factor);
OperatorSum multiply(const OperatorSum& a, const OperatorSum& b);
OperatorSum adjoint(const OperatorSum& a);

// Self-paired in the symbolic sense: canonicalize(a - a†) is empty.
bool is_hermitian(const OperatorSum& a);

// True iff canonicalize(ab - ba) is the zero operator.
bool commutes(const OperatorSum& a, const OperatorSum& b);

struct DenseOperator {
  Eigen::MatrixXcd entries;
  bool hermitian = false;

  Eigen::Index dim() const { return entries.rows(); }
};

inline constexpr int kDefaultMaxDenseSites = 12;

// Tensor-product realization in the per-site sigma-z eigenbasis,
// sigma-z|0> = +|0>. Site 1 is the leftmost tensor factor.
DenseOperator to_dense(const OperatorSum& op, int sites,
                       int max_sites = kDefaultMaxDenseSites);

Eigen::MatrixXcd pauli_matrix(Pauli p);

// Convenience: single string -> OperatorSum from letters like "XXI".
OperatorSum pauli_term(cplx coeff, const std::string& letters);

// One term per line: `coeff_re coeff_im LETTERS` (e.g. `-1 0 XXI`).
std::string format_operator_sum(const OperatorSum& op);
OperatorSum parse_operator_sum(const std::string& text);

}  // namespace mzm
