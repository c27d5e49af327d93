#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sylvan/errors.hpp"

namespace sylvan {

// Indices into the distinguished basis U of an extension: exponent vectors
// for Z^d and polynomial monomials, {g} for elements of a finite group,
// {j, e_1, ..., e_r} for b_j t^e in a tensor extension.
using Index = std::vector<int>;

/// Either Z^d or a finite group given by its multiplication table.
class Group {
 public:
  enum class Kind { FreeAbelian, Finite };

  static Group free_abelian(int d);
  static Group cyclic(int n, const std::string& generator = "s");
  // Z/n_1 x ... x Z/n_k; generators default to a, b, c, ...
  static Group abelian_product(const std::vector<int>& orders, std::vector<std::string> generators = {});
  // S_3 with elements e, r, r2, f, rf, r2f (r a 3-cycle, f a transposition).
  static Group symmetric3();
  // Validates a user-supplied table. Associativity is checked exhaustively up
  // to order 64 and on `samples` random triples (from `seed`) above that.
  static Group from_table(std::vector<std::string> names, std::vector<std::vector<int>> table,
                          std::uint64_t seed = 0, int samples = 20000);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  int rank() const { return d_; }  // d for Z^d
  int order() const { return static_cast<int>(table_.size()); }

  Index identity() const;
  Index mul(const Index& a, const Index& b) const;
  Index inv(const Index& a) const;
  bool is_identity(const Index& a) const { return a == identity(); }
  void check(const Index& a) const;
  std::vector<Index> elements() const;  // finite groups only

  // Display name: "z^3", "z1^-1*z2", "s^2", table names, "1" for the identity.
  std::string name(const Index& a) const;
  // Variable names accepted by the text parser and the element each denotes.
  const std::map<std::string, Index>& generators() const { return generators_; }
  std::string descriptor() const { return descriptor_; }

 private:
  Group() = default;

  Kind kind_ = Kind::FreeAbelian;
  int d_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::map<std::string, Index> generators_;
  std::string descriptor_;
};

}  // namespace sylvan
