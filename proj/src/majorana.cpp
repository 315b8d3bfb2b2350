#include "mzm/majorana.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <map>
#include <sstream>

#include "mzm/errors.hpp"

namespace mzm {

namespace {

constexpr double kDropTol = 1e-12;

void check_indices(const MajoranaMonomial& m, int max_index) {
  for (int idx : m.indices) {
    if (idx < 1 || idx > max_index) {
      throw ConfigError("Majorana index " + std::to_string(idx) +
                        " outside {1,...," + std::to_string(max_index) + "}");
    }
  }
}

// Insertion sort with sign tracking, then collapse equal adjacent pairs.
MajoranaMonomial canonical_monomial(MajoranaMonomial m) {
  int swaps = 0;
  for (std::size_t i = 1; i < m.indices.size(); ++i) {
    for (std::size_t j = i; j > 0 && m.indices[j - 1] > m.indices[j]; --j) {
      std::swap(m.indices[j - 1], m.indices[j]);
      ++swaps;
    }
  }
  if (swaps % 2 == 1) m.coeff = -m.coeff;
  std::vector<int> reduced;
  reduced.reserve(m.indices.size());
  for (int idx : m.indices) {
    if (!reduced.empty() && reduced.back() == idx) {
      reduced.pop_back();  // gamma^2 = 1
    } else {
      reduced.push_back(idx);
    }
  }
  m.indices = std::move(reduced);
  return m;
}

}  // namespace

MajoranaOperatorSum majorana_canonicalize(const MajoranaOperatorSum& m,
                                          int max_index) {
  std::map<std::vector<int>, cplx> merged;
  for (const auto& t : m.terms) {
    check_indices(t, max_index);
    MajoranaMonomial c = canonical_monomial(t);
    merged[c.indices] += c.coeff;
  }
  MajoranaOperatorSum out;
  for (const auto& [indices, coeff] : merged) {
    if (std::abs(coeff.real()) < kDropTol && std::abs(coeff.imag()) < kDropTol) {
      continue;
    }
    out.terms.push_back({coeff, indices});
  }
  return out;
}

MajoranaOperatorSum majorana_add(const MajoranaOperatorSum& a,
                                 const MajoranaOperatorSum& b, int max_index) {
  MajoranaOperatorSum out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return majorana_canonicalize(out, max_index);
}

MajoranaOperatorSum majorana_multiply(const MajoranaOperatorSum& a,
                                      const MajoranaOperatorSum& b,
                                      int max_index) {
  MajoranaOperatorSum out;
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) {
      MajoranaMonomial p;
      p.coeff = ta.coeff * tb.coeff;
      p.indices = ta.indices;
      p.indices.insert(p.indices.end(), tb.indices.begin(), tb.indices.end());
      out.terms.push_back(std::move(p));
    }
  }
  return majorana_canonicalize(out, max_index);
}

MajoranaOperatorSum majorana_scale(const MajoranaOperatorSum& a, cplx factor) {
  MajoranaOperatorSum out = a;
  for (auto& t : out.terms) t.coeff *= factor;
  return out;
}

MajoranaOperatorSum majorana_adjoint(const MajoranaOperatorSum& a,
                                     int max_index) {
  // (g_{i1}...g_{ik})^dag = g_{ik}...g_{i1}; each gamma is self-adjoint.
  MajoranaOperatorSum out;
  for (const auto& t : a.terms) {
    MajoranaMonomial r;
    r.coeff = std::conj(t.coeff);
    r.indices.assign(t.indices.rbegin(), t.indices.rend());
    out.terms.push_back(std::move(r));
  }
  return majorana_canonicalize(out, max_index);
}

PauliString jw_gamma(int index, JWConvention conv, int sites) {
  if (index < 1 || index > 2 * sites) {
    throw ConfigError("jw_gamma: index out of range");
  }
  const int site = (index + 1) / 2;  // 1-based
  const bool odd = (index % 2 == 1);
  PauliString s;
  s.coeff = {1.0, 0.0};
  s.letters.assign(sites, Pauli::I);
  for (int k = 0; k < site - 1; ++k) s.letters[k] = Pauli::Z;
  const Pauli odd_letter = (conv == JWConvention::A) ? Pauli::X : Pauli::Y;
  const Pauli even_letter = (conv == JWConvention::A) ? Pauli::Y : Pauli::X;
  s.letters[site - 1] = odd ? odd_letter : even_letter;
  return s;
}

OperatorSum jordan_wigner(const MajoranaOperatorSum& m, JWConvention conv,
                          int sites) {
  OperatorSum out;
  for (const auto& t : m.terms) {
    PauliString acc;
    acc.coeff = t.coeff;
    acc.letters.assign(sites, Pauli::I);
    for (int idx : t.indices) acc = pauli_mul(acc, jw_gamma(idx, conv, sites));
    out.terms.push_back(std::move(acc));
  }
  return canonicalize(out);
}

MajoranaOperatorSum annihilation_op(int site, int sites) {
  MajoranaOperatorSum out;
  out.terms.push_back({{0.5, 0.0}, {2 * site - 1}});
  out.terms.push_back({{0.0, 0.5}, {2 * site}});
  return majorana_canonicalize(out, 2 * sites);
}

MajoranaOperatorSum creation_op(int site, int sites) {
  MajoranaOperatorSum out;
  out.terms.push_back({{0.5, 0.0}, {2 * site - 1}});
  out.terms.push_back({{0.0, -0.5}, {2 * site}});
  return majorana_canonicalize(out, 2 * sites);
}

KitaevHamiltonians kitaev_hamiltonians(int sites) {
  if (sites != 3) {
    throw ConfigError("kitaev_hamiltonians: only the 3-site schedule ships");
  }
  const cplx i{0.0, 1.0};
  KitaevHamiltonians h;
  h.h0.terms = {{i, {2, 3}}, {i, {4, 5}}};
  h.h1.terms = {{i, {4, 5}}, {cplx{0.0, 0.5}, {1, 2}}};
  h.h2.terms = {{i, {4, 5}}, {i, {2, 6}}};
  h.h0 = majorana_canonicalize(h.h0, 2 * sites);
  h.h1 = majorana_canonicalize(h.h1, 2 * sites);
  h.h2 = majorana_canonicalize(h.h2, 2 * sites);
  return h;
}

SpinHamiltonians spin_hamiltonians(int sites) {
  if (sites != 3) {
    throw ConfigError("spin_hamiltonians: only the 3-site schedule ships");
  }
  SpinHamiltonians h;
  h.h0 = add(pauli_term(-1.0, "XXI"), pauli_term(-1.0, "IXX"));
  h.h1 = add(add(pauli_term(-1.0, "IXX"), pauli_term(0.5, "ZII")),
             pauli_term(0.5, "III"));
  h.h2 = add(pauli_term(-1.0, "IXX"), pauli_term(-1.0, "XZY"));
  return h;
}

OperatorSum parity_operator(int sites) {
  return pauli_term(1.0, std::string(static_cast<std::size_t>(sites), 'Z'));
}

OperatorSum site1_relabel(const OperatorSum& op) {
  OperatorSum out = op;
  for (auto& t : out.terms) {
    if (t.letters.empty()) continue;
    if (t.letters.front() == Pauli::Y || t.letters.front() == Pauli::Z) {
      t.coeff = -t.coeff;
    }
  }
  return canonicalize(out);
}

SpectraMatchResult spectra_match(const DenseOperator& a, const DenseOperator& b,
                                 double tol) {
  if (!a.hermitian || !b.hermitian) {
    throw ConfigError("spectra_match: non-Hermitian input");
  }
  if (a.dim() != b.dim()) {
    throw ConfigError("spectra_match: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(a.entries,
                                                     Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eb(b.entries,
                                                     Eigen::EigenvaluesOnly);
  SpectraMatchResult r;
  r.max_deviation =
      (ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff();
  r.match = r.max_deviation <= tol;
  return r;
}

std::string format_majorana_sum(const MajoranaOperatorSum& m) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& t : m.terms) {
    os << t.coeff.real() << ' ' << t.coeff.imag();
    for (int idx : t.indices) os << ' ' << idx;
    os << '\n';
  }
  return os.str();
}

MajoranaOperatorSum parse_majorana_sum(const std::string& text, int max_index) {
  MajoranaOperatorSum out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    double re = 0, im = 0;
    if (!(ls >> re >> im)) {
      throw ConfigError("parse_majorana_sum: bad line: " + line);
    }
    MajoranaMonomial t;
    t.coeff = {re, im};
    int idx = 0;
    while (ls >> idx) t.indices.push_back(idx);
    out.terms.push_back(std::move(t));
  }
  return majorana_canonicalize(out, max_index);
}

}  // namespace mzm
