#include "sylvan/group.hpp"

#include <array>
#include <cctype>
#include <random>

namespace sylvan {

Group Group::free_abelian(int d) {
  if (d < 1) throw InvalidInput("Z^d needs d >= 1");
  Group g;
  g.kind_ = Kind::FreeAbelian;
  g.d_ = d;
  for (int i = 0; i < d; ++i) {
    Index e(d, 0);
    e[i] = 1;
    g.generators_[d == 1 ? "z" : "z" + std::to_string(i + 1)] = e;
  }
  g.descriptor_ = d == 1 ? "Z" : "Z^" + std::to_string(d);
  return g;
}

Group Group::cyclic(int n, const std::string& generator) {
  return abelian_product({n}, {generator});
}

Group Group::abelian_product(const std::vector<int>& orders, std::vector<std::string> generators) {
  if (orders.empty()) throw InvalidInput("need at least one cyclic factor");
  if (generators.empty())
    for (std::size_t i = 0; i < orders.size(); ++i) generators.emplace_back(1, static_cast<char>('a' + i));
  if (generators.size() != orders.size()) throw InvalidInput("one generator name per factor");
  int n = 1;
  for (int o : orders) {
    if (o < 1) throw InvalidInput("cyclic factor order must be positive");
    n *= o;
  }
  // element index = mixed-radix digits, first factor most significant
  auto digits = [&](int x) {
    std::vector<int> out(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
      out[i] = x % orders[i];
      x /= orders[i];
    }
    return out;
  };
  auto pack = [&](const std::vector<int>& dg) {
    int x = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) x = x * orders[i] + dg[i];
    return x;
  };
  std::vector<std::string> names(n);
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x) {
    auto dx = digits(x);
    std::string name;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (dx[i] == 0) continue;
      if (!name.empty()) name += "*";
      name += generators[i] + (dx[i] == 1 ? "" : "^" + std::to_string(dx[i]));
    }
    names[x] = name.empty() ? "1" : name;
    for (int y = 0; y < n; ++y) {
      auto dy = digits(y);
      for (std::size_t i = 0; i < orders.size(); ++i) dy[i] = (dx[i] + dy[i]) % orders[i];
      table[x][y] = pack(dy);
    }
  }
  Group g = from_table(names, table);
  g.generators_.clear();
  for (std::size_t i = 0; i < orders.size(); ++i) {
    std::vector<int> dg(orders.size(), 0);
    dg[i] = 1 % orders[i];
    g.generators_[generators[i]] = {pack(dg)};
  }
  g.descriptor_.clear();
  for (std::size_t i = 0; i < orders.size(); ++i) g.descriptor_ += (i ? "xZ/" : "Z/") + std::to_string(orders[i]);
  return g;
}

Group Group::symmetric3() {
  // permutations of {0,1,2} as images; r = (0 1 2), f = (1 2)
  using Perm = std::array<int, 3>;
  auto compose = [](const Perm& p, const Perm& q) {  // p after q... applied as (pq)(x) = p(q(x))
    return Perm{p[q[0]], p[q[1]], p[q[2]]};
  };
  Perm e{0, 1, 2}, r{1, 2, 0}, f{0, 2, 1};
  Perm r2 = compose(r, r);
  std::vector<Perm> elems{e, r, r2, f, compose(r, f), compose(r2, f)};
  std::vector<std::string> names{"e", "r", "r2", "f", "rf", "r2f"};
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) {
      Perm p = compose(elems[x], elems[y]);
      for (int z = 0; z < 6; ++z)
        if (elems[z] == p) table[x][y] = z;
    }
  Group g = from_table(names, table);
  g.descriptor_ = "S3";
  return g;
}

Group Group::from_table(std::vector<std::string> names, std::vector<std::vector<int>> table, std::uint64_t seed,
                        int samples) {
  const int n = static_cast<int>(names.size());
  if (n < 1) throw InvalidInput("group needs at least one element");
  if (static_cast<int>(table.size()) != n) throw InvalidInput("multiplication table has the wrong size");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw InvalidInput("multiplication table has the wrong size");
    for (int v : row)
      if (v < 0 || v >= n) throw InvalidInput("multiplication table entry out of range");
  }
  int id = -1;
  for (int x = 0; x < n && id < 0; ++x) {
    bool ok = true;
    for (int y = 0; y < n && ok; ++y) ok = table[x][y] == y && table[y][x] == y;
    if (ok) id = x;
  }
  if (id < 0) throw InvalidInput("multiplication table has no identity");
  std::vector<int> inverse(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y)
      if (table[x][y] == id && table[y][x] == id) inverse[x] = y;
    if (inverse[x] < 0) throw InvalidInput("element '" + names[x] + "' has no inverse");
  }
  auto assoc = [&](int x, int y, int z) { return table[table[x][y]][z] == table[x][table[y][z]]; };
  if (n <= 64) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (!assoc(x, y, z)) throw InvalidInput("multiplication table is not associative");
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int s = 0; s < samples; ++s)
      if (!assoc(pick(rng), pick(rng), pick(rng)))
        throw InvalidInput("multiplication table is not associative (sampled, seed " + std::to_string(seed) + ")");
  }
  Group g;
  g.kind_ = Kind::Finite;
  g.names_ = std::move(names);
  g.table_ = std::move(table);
  g.inverse_ = std::move(inverse);
  g.identity_ = id;
  for (int x = 0; x < n; ++x) {
    const auto& nm = g.names_[x];
    bool ident = !nm.empty() && (std::isalpha(static_cast<unsigned char>(nm[0])) || nm[0] == '_');
    for (char c : nm) ident = ident && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (ident) g.generators_[nm] = {x};
  }
  g.descriptor_ = "G" + std::to_string(n);
  return g;
}

Index Group::identity() const { return is_finite() ? Index{identity_} : Index(d_, 0); }

void Group::check(const Index& a) const {
  if (is_finite()) {
    if (a.size() != 1 || a[0] < 0 || a[0] >= order()) throw InvalidInput("not an element of " + descriptor_);
  } else if (static_cast<int>(a.size()) != d_) {
    throw InvalidInput("exponent vector has the wrong length for " + descriptor_);
  }
}

Index Group::mul(const Index& a, const Index& b) const {
  if (is_finite()) return {table_[a[0]][b[0]]};
  Index out(d_);
  for (int i = 0; i < d_; ++i) out[i] = a[i] + b[i];
  return out;
}

Index Group::inv(const Index& a) const {
  if (is_finite()) return {inverse_[a[0]]};
  Index out(d_);
  for (int i = 0; i < d_; ++i) out[i] = -a[i];
  return out;
}

std::vector<Index> Group::elements() const {
  if (!is_finite()) throw InvalidInput(descriptor_ + " is infinite");
  std::vector<Index> out;
  for (int x = 0; x < order(); ++x) out.push_back({x});
  return out;
}

std::string Group::name(const Index& a) const {
  if (is_finite()) return a[0] == identity_ ? "1" : names_[a[0]];
  std::string out;
  for (int i = 0; i < d_; ++i) {
    if (a[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += d_ == 1 ? "z" : "z" + std::to_string(i + 1);
    if (a[i] != 1) out += "^" + std::to_string(a[i]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace sylvan
