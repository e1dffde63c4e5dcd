#pragma once

#include "mob/bracket_series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mob {

struct IndexAssignment {
  std::vector<std::string> free_indices;
  Substitution bound;
  Rational det_abs{1};
};

// A free-index choice whose complementary system has zero determinant.
struct SingularChoice {
  std::vector<std::string> free_indices;
};

struct AssignmentSet {
  std::vector<IndexAssignment> assignments;
  std::vector<SingularChoice> singular;
};

// Every subset of (#indices - #brackets) free indices in lexicographic order;
// singular subsets are recorded, not returned.
AssignmentSet enumerate_assignments(const BracketSeries& series);

struct SeriesRepresentation {
  std::optional<std::string> free_index;
  CoefficientTerm term;
  Rational prefactor{1};
  IndexAssignment origin;
  // Free indices of representations collapsed into this one by dedupe.
  std::vector<std::string> merged;

  std::string label() const { return free_index ? *free_index : std::string("none"); }
  // Canonical text with the free index renamed to "n".
  std::string canonical_text() const;
};

// Rule 2: substitutes the solution, replaces phi of each solved index by
// Gamma(-n*) and divides by |det|.
SeriesRepresentation evaluate_assignment(const BracketSeries& series, const IndexAssignment& a);

// Collapses representations with identical canonical term and prefactor,
// keeping the first.
std::vector<SeriesRepresentation> dedupe(std::vector<SeriesRepresentation> reps);

}  // namespace mob
