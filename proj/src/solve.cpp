#include "mob/solve.hpp"

#include "mob/error.hpp"

#include <stdexcept>

namespace mob {

namespace {

// Solves sum_j A[i][j] x_j = rhs[i] exactly; returns nullopt when singular.
std::optional<std::pair<std::vector<AffineForm>, Rational>> gauss_solve(std::vector<std::vector<Rational>> A,
                                                                         std::vector<AffineForm> rhs) {
  const std::size_t n = A.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && A[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      std::swap(A[pivot], A[col]);
      std::swap(rhs[pivot], rhs[col]);
      det = -det;
    }
    const Rational p = A[col][col];
    det *= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      const Rational f = A[r][col] / p;
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      rhs[r] -= rhs[col] * f;
    }
  }
  std::vector<AffineForm> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / A[i][i];
  return std::make_pair(std::move(x), det < 0 ? Rational(-det) : det);
}

void combinations(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

AssignmentSet enumerate_assignments(const BracketSeries& series) {
  series.validate();
  const auto names = series.index_names();
  const std::size_t d = series.dimension();
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> cur;
  combinations(names.size(), d, 0, cur, subsets);

  AssignmentSet out;
  for (const auto& subset : subsets) {
    std::vector<bool> is_free(names.size(), false);
    for (auto i : subset) is_free[i] = true;
    std::vector<std::string> free, bound;
    for (std::size_t i = 0; i < names.size(); ++i) (is_free[i] ? free : bound).push_back(names[i]);

    std::vector<std::vector<Rational>> A;
    std::vector<AffineForm> rhs;
    for (const auto& b : series.brackets) {
      std::vector<Rational> row;
      AffineForm rest = b.argument;
      for (const auto& name : bound) {
        row.push_back(b.argument.coefficient(name));
        rest = rest.without(name);
      }
      A.push_back(std::move(row));
      rhs.push_back(-rest);
    }
    auto solved = gauss_solve(std::move(A), std::move(rhs));
    if (!solved) {
      out.singular.push_back(SingularChoice{free});
      continue;
    }
    IndexAssignment a;
    a.free_indices = free;
    for (std::size_t i = 0; i < bound.size(); ++i) a.bound.emplace(bound[i], solved->first[i]);
    a.det_abs = solved->second;
    out.assignments.push_back(std::move(a));
  }
  return out;
}

SeriesRepresentation evaluate_assignment(const BracketSeries& series, const IndexAssignment& a) {
  for (const auto& b : series.brackets) {
    if (!affine_substitute(b.argument, a.bound).is_zero()) {
      throw std::logic_error("solve: assignment does not annihilate <" + b.argument.str() + ">");
    }
  }
  SeriesRepresentation rep;
  if (!a.free_indices.empty()) {
    if (a.free_indices.size() > 1) {
      throw Error("solve", ErrorKind::unsupported, "series of dimension " + std::to_string(a.free_indices.size()));
    }
    rep.free_index = a.free_indices.front();
  }
  CoefficientTerm term = series.coefficient.substitute(a.bound);
  for (const auto& [name, value] : a.bound) term.gammas.push_back(GammaFactor{-value, 1});
  term.normalize();
  rep.term = std::move(term);
  rep.prefactor = series.scale / a.det_abs;
  rep.origin = a;
  return rep;
}

std::string SeriesRepresentation::canonical_text() const {
  CoefficientTerm t = term;
  if (free_index) t.rename({{*free_index, "n"}});
  t.normalize();
  return format_coefficient(t, prefactor);
}

std::vector<SeriesRepresentation> dedupe(std::vector<SeriesRepresentation> reps) {
  std::vector<SeriesRepresentation> out;
  std::vector<std::string> keys;
  for (auto& r : reps) {
    std::string key = r.canonical_text();
    bool found = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (keys[i] == key) {
        out[i].merged.push_back(r.label());
        found = true;
        break;
      }
    }
    if (!found) {
      keys.push_back(std::move(key));
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace mob
