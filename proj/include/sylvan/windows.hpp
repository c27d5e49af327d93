#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "sylvan/group.hpp"
#include "sylvan/scalars.hpp"

namespace sylvan {

// Finite Q-linear combination of U-basis elements.
using SparseVec = std::map<Index, Rational>;

/// A finitely generated free R-submodule of S spanned by K-combinations of
/// U-basis elements: either a set of basis elements (Monomial) or a subspace
/// in reduced row echelon form (Subspace). Pivots are the smallest indices.
class Window {
 public:
  enum class Kind { Monomial, Subspace };

  Window() = default;
  static Window monomial(std::set<Index> indices);
  static Window subspace(const std::vector<SparseVec>& generators);

  Kind kind() const { return kind_; }
  bool is_monomial() const { return kind_ == Kind::Monomial; }
  std::size_t dim() const { return is_monomial() ? indices_.size() : rows_.size(); }
  bool empty() const { return dim() == 0; }

  const std::set<Index>& indices() const;  // Monomial only
  // Basis vectors: unit vectors for Monomial, RREF rows for Subspace.
  std::vector<SparseVec> basis() const;
  // Union of the supports of the basis vectors.
  std::set<Index> support() const;

  bool contains(const SparseVec& v) const;
  bool contains(const Window& w) const;
  // The same window viewed as a Subspace (canonical form).
  Window as_subspace() const;

  bool operator==(const Window& other) const;

 private:
  Kind kind_ = Kind::Monomial;
  std::set<Index> indices_;
  std::vector<SparseVec> rows_;
};

Window window_sum(const Window& a, const Window& b);
Window window_intersect(const Window& a, const Window& b);

// Products of basis elements as K-combinations (see ExtensionContext).
using BasisProduct = std::function<std::vector<std::pair<Index, Rational>>(const Index&, const Index&)>;

// W*V: span of all products of basis vectors. Stays Monomial when both
// factors are Monomial and every basis product is a single term.
Window window_product(const Window& w, const Window& v, const BasisProduct& product);

// dim(W + WV) / dim(W) - 1.
Rational invariance_defect(const Window& w, const Window& v, const BasisProduct& product);

// c * W for the lattice translation idx -> idx + c.
Window translate(const Window& w, const Index& c);

// ---------------------------------------------------------------------------
// Standard windows

// [lo, hi)^d in Z^d.
Window box_window(int lo, int hi, int d);
// span{b_j t^e : all j < field_degree, e in [lo, hi)^vars} in a tensor extension.
Window degree_window(int lo, int hi, int field_degree, int vars = 1);
// Every element of a finite group of the given order.
Window full_group_window(int order);

// What the U-indices of an extension look like; needed to materialize
// schedule strings.
struct IndexShape {
  enum class Kind { Lattice, FiniteGroup, Tensor };
  Kind kind = Kind::Lattice;
  int d = 1;             // lattice rank, or number of polynomial variables
  int order = 0;         // finite groups
  int field_degree = 1;  // tensor extensions
};

/// Nested windows W_1 <= W_2 <= ... together with the parameter N_i of each.
struct WindowSchedule {
  std::string text;
  std::vector<int> sizes;
  std::vector<Window> windows;
};

// Grammar:  box:2^k,k=2..6 | box:4,8,16 | box:0..16^2 | box:-8..8
//           degrees:32 | degrees:2^k,k=1..6 | degrees:4,8 | group:full
// The ^d suffix of a range must match the lattice rank.
WindowSchedule parse_schedule(const std::string& text, const IndexShape& shape);

// ---------------------------------------------------------------------------
// Quasitilings (lattice translations)

struct Quasitiling {
  std::vector<Window> tiles;
  std::vector<std::vector<Index>> centers;          // per tile
  std::vector<std::vector<Window>> subwindows;      // per tile, per center
  Rational epsilon;
  Rational coverage;
};

// Single tile [0,n)^d at the centers of n Z^d whose translate fits in [0,N)^d.
// Throws TilingTooCoarse when the coverage (n floor(N/n))^d / N^d < 1 - eps.
Quasitiling ow_quasitile_boxes(int d, int n, int N, const Rational& eps);
// W_1 = span{1, ..., t^{n-1}} with centers t^{ln}, 0 <= l < N/n (indices {0, e}).
Quasitiling kt_quasitile(int n, int N);

struct ConditionResult {
  bool passed = true;
  std::string detail;
  std::vector<Index> witness;
};

struct QuasitilingReport {
  ConditionResult subwindow_size;   // dim W_{j,c} >= (1 - eps) dim W_j
  ConditionResult independence;     // sum of c W_{j,c} is direct
  ConditionResult coverage;         // contained in the target, dim >= (1 - eps) dim W
  std::size_t direct_sum_dim = 0;
  bool passed() const { return subwindow_size.passed && independence.passed && coverage.passed; }
};

QuasitilingReport check_quasitiling(const Quasitiling& q, const Window& target);

nlohmann::json to_json(const Window& w);
nlohmann::json to_json(const QuasitilingReport& r);
nlohmann::json to_json(const Quasitiling& q);

}  // namespace sylvan
