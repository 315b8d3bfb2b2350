#include "mzm/pauli.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "mzm/errors.hpp"

namespace mzm {

namespace {

constexpr double kDropTol = 1e-12;

// Single-site products: result letter and phase, indexed [a][b].
constexpr std::uint8_t kMulLetter[4][4] = {
    {0, 1, 2, 3},
    {1, 0, 3, 2},
    {2, 3, 0, 1},
    {3, 2, 1, 0},
};
// Phase encoded as power of i: X*Y = i Z, Y*X = -i Z, ...
constexpr std::uint8_t kMulPhase[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},
    {0, 3, 0, 1},
    {0, 1, 3, 0},
};

cplx ipow(std::uint8_t n) {
  switch (n & 3u) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw ConfigError(std::string("unknown Pauli letter '") + c + "'");
  }
}

bool PauliString::is_identity() const {
  return std::all_of(letters.begin(), letters.end(),
                     [](Pauli p) { return p == Pauli::I; });
}

PauliString pauli_mul(const PauliString& a, const PauliString& b) {
  if (a.letters.size() != b.letters.size()) {
    throw ConfigError("pauli_mul: length mismatch");
  }
  PauliString out;
  out.coeff = a.coeff * b.coeff;
  out.letters.reserve(a.letters.size());
  std::uint8_t phase = 0;
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    const auto la = static_cast<std::uint8_t>(a.letters[i]);
    const auto lb = static_cast<std::uint8_t>(b.letters[i]);
    out.letters.push_back(static_cast<Pauli>(kMulLetter[la][lb]));
    phase = static_cast<std::uint8_t>(phase + kMulPhase[la][lb]);
  }
  out.coeff *= ipow(phase);
  return out;
}

std::size_t OperatorSum::sites() const {
  if (terms.empty()) throw ConfigError("OperatorSum::sites: empty operator");
  const std::size_t n = terms.front().letters.size();
  for (const auto& t : terms) {
    if (t.letters.size() != n) {
      throw ConfigError("OperatorSum::sites: ragged term lengths");
    }
  }
  return n;
}

OperatorSum canonicalize(const OperatorSum& op) {
  std::map<std::vector<Pauli>, cplx> merged;
  for (const auto& t : op.terms) merged[t.letters] += t.coeff;
  OperatorSum out;
  for (const auto& [letters, coeff] : merged) {
    if (std::abs(coeff.real()) < kDropTol && std::abs(coeff.imag()) < kDropTol) {
      continue;
    }
    out.terms.push_back({coeff, letters});
  }
  return out;
}

OperatorSum add(const OperatorSum& a, const OperatorSum& b) {
  OperatorSum out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return canonicalize(out);
}

OperatorSum subtract(const OperatorSum& a, const OperatorSum& b) {
  return add(a, scale(b, {-1.0, 0.0}));
}

OperatorSum scale(const OperatorSum& a, cplx factor) {
  OperatorSum out = a;
  for (auto& t : out.terms) t.coeff *= factor;
  return canonicalize(out);
}

OperatorSum multiply(const OperatorSum& a, const OperatorSum& b) {
  OperatorSum out;
  out.terms.reserve(a.terms.size() * b.terms.size());
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) {
      out.terms.push_back(pauli_mul(ta, tb));
    }
  }
  return canonicalize(out);
}

OperatorSum adjoint(const OperatorSum& a) {
  OperatorSum out = a;
  for (auto& t : out.terms) t.coeff = std::conj(t.coeff);
  return canonicalize(out);
}

bool is_hermitian(const OperatorSum& a) {
  return subtract(a, adjoint(a)).empty();
}

bool commutes(const OperatorSum& a, const OperatorSum& b) {
  if (!a.terms.empty() && !b.terms.empty() &&
      a.terms.front().letters.size() != b.terms.front().letters.size()) {
    throw ConfigError("commutes: length mismatch");
  }
  return subtract(multiply(a, b), multiply(b, a)).empty();
}

Eigen::MatrixXcd pauli_matrix(Pauli p) {
  Eigen::MatrixXcd m(2, 2);
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

DenseOperator to_dense(const OperatorSum& op, int sites, int max_sites) {
  if (sites < 1 || sites > max_sites) {
    throw ConfigError("to_dense: site count " + std::to_string(sites) +
                      " outside [1, " + std::to_string(max_sites) + "]");
  }
  for (const auto& t : op.terms) {
    if (static_cast<int>(t.letters.size()) != sites) {
      throw ConfigError("to_dense: term length does not match site count");
    }
  }
  const Eigen::Index dim = Eigen::Index(1) << sites;
  DenseOperator out;
  out.entries = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : op.terms) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (Pauli p : t.letters) m = kron(m, pauli_matrix(p));
    out.entries += t.coeff * m;
  }
  out.hermitian = is_hermitian(canonicalize(op));
  return out;
}

OperatorSum pauli_term(cplx coeff, const std::string& letters) {
  PauliString s;
  s.coeff = coeff;
  for (char c : letters) s.letters.push_back(pauli_from_char(c));
  return OperatorSum({s});
}

std::string format_operator_sum(const OperatorSum& op) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& t : canonicalize(op).terms) {
    os << t.coeff.real() << ' ' << t.coeff.imag() << ' ';
    for (Pauli p : t.letters) os << pauli_char(p);
    os << '\n';
  }
  return os.str();
}

OperatorSum parse_operator_sum(const std::string& text) {
  OperatorSum out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    double re = 0, im = 0;
    std::string letters;
    if (!(ls >> re >> im >> letters)) {
      throw ConfigError("parse_operator_sum: bad line: " + line);
    }
    PauliString s;
    s.coeff = {re, im};
    for (char c : letters) s.letters.push_back(pauli_from_char(c));
    out.terms.push_back(std::move(s));
  }
  return canonicalize(out);
}

}  // namespace mzm
