#include "sylvan/windows.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

namespace sylvan {

namespace {

// Reduced row echelon form over sparse vectors; rows keyed by pivot.
class Echelon {
 public:
  // Reduces v against the current rows in place.
  void reduce(SparseVec& v) const {
    std::vector<std::pair<Index, Rational>> hits;
    for (const auto& [idx, c] : v)
      if (rows_.count(idx)) hits.emplace_back(idx, c);
    for (const auto& [p, c] : hits) axpy(v, -c, rows_.at(p));
  }

  // True when v was independent of the current rows.
  bool insert(SparseVec v) {
    reduce(v);
    if (v.empty()) return false;
    const Index pivot = v.begin()->first;
    const Rational lead = v.begin()->second;
    if (lead != 1)
      for (auto& [idx, c] : v) c /= lead;
    for (auto& [p, row] : rows_) {
      auto it = row.find(pivot);
      if (it != row.end()) {
        Rational f = it->second;
        axpy(row, -f, v);
      }
    }
    rows_.emplace(pivot, std::move(v));
    return true;
  }

  std::size_t size() const { return rows_.size(); }
  std::vector<SparseVec> rows() const {
    std::vector<SparseVec> out;
    for (const auto& [p, r] : rows_) out.push_back(r);
    return out;
  }
  const std::map<Index, SparseVec>& by_pivot() const { return rows_; }

 private:
  static void axpy(SparseVec& v, const Rational& a, const SparseVec& x) {
    for (const auto& [idx, c] : x) {
      auto it = v.find(idx);
      if (it == v.end()) {
        v.emplace(idx, a * c);
      } else {
        it->second += a * c;
        if (sgn(it->second) == 0) v.erase(it);
      }
    }
  }

  std::map<Index, SparseVec> rows_;
};

SparseVec unit(const Index& idx) { return SparseVec{{idx, Rational(1)}}; }

Index tagged(int tag, const Index& idx) {
  Index out;
  out.reserve(idx.size() + 1);
  out.push_back(tag);
  out.insert(out.end(), idx.begin(), idx.end());
  return out;
}

Index add_index(const Index& a, const Index& b) {
  if (a.size() != b.size()) throw InvalidInput("translation has the wrong dimension");
  Index out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

std::string index_string(const Index& idx) {
  std::string out = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? "," : "") + std::to_string(idx[i]);
  return out + ")";
}

}  // namespace

Window Window::monomial(std::set<Index> indices) {
  Window w;
  w.kind_ = Kind::Monomial;
  w.indices_ = std::move(indices);
  return w;
}

Window Window::subspace(const std::vector<SparseVec>& generators) {
  Echelon e;
  for (const auto& g : generators) {
    SparseVec v;
    for (const auto& [idx, c] : g)
      if (sgn(c) != 0) v.emplace(idx, c);
    e.insert(std::move(v));
  }
  Window w;
  w.kind_ = Kind::Subspace;
  w.rows_ = e.rows();
  return w;
}

const std::set<Index>& Window::indices() const {
  if (!is_monomial()) throw InvalidInput("subspace windows have no index set");
  return indices_;
}

std::vector<SparseVec> Window::basis() const {
  if (!is_monomial()) return rows_;
  std::vector<SparseVec> out;
  out.reserve(indices_.size());
  for (const auto& idx : indices_) out.push_back(unit(idx));
  return out;
}

std::set<Index> Window::support() const {
  if (is_monomial()) return indices_;
  std::set<Index> out;
  for (const auto& r : rows_)
    for (const auto& [idx, c] : r) out.insert(idx);
  return out;
}

bool Window::contains(const SparseVec& v) const {
  if (is_monomial()) {
    for (const auto& [idx, c] : v)
      if (sgn(c) != 0 && !indices_.count(idx)) return false;
    return true;
  }
  Echelon e;
  for (const auto& r : rows_) e.insert(r);
  SparseVec x = v;
  e.reduce(x);
  return x.empty();
}

bool Window::contains(const Window& w) const {
  if (is_monomial() && w.is_monomial())
    return std::includes(indices_.begin(), indices_.end(), w.indices_.begin(), w.indices_.end());
  for (const auto& v : w.basis())
    if (!contains(v)) return false;
  return true;
}

Window Window::as_subspace() const { return is_monomial() ? subspace(basis()) : *this; }

bool Window::operator==(const Window& other) const {
  if (is_monomial() && other.is_monomial()) return indices_ == other.indices_;
  return as_subspace().rows_ == other.as_subspace().rows_;
}

Window window_sum(const Window& a, const Window& b) {
  if (a.kind() != b.kind()) throw InvalidInput("cannot combine monomial and subspace windows");
  if (a.is_monomial()) {
    std::set<Index> u = a.indices();
    u.insert(b.indices().begin(), b.indices().end());
    return Window::monomial(std::move(u));
  }
  auto gens = a.basis();
  for (auto& v : b.basis()) gens.push_back(std::move(v));
  return Window::subspace(gens);
}

Window window_intersect(const Window& a, const Window& b) {
  if (a.kind() != b.kind()) throw InvalidInput("cannot combine monomial and subspace windows");
  if (a.is_monomial()) {
    std::set<Index> out;
    std::set_intersection(a.indices().begin(), a.indices().end(), b.indices().begin(), b.indices().end(),
                          std::inserter(out, out.end()));
    return Window::monomial(std::move(out));
  }
  // Zassenhaus: rows (x | x) for x in A and (y | 0) for y in B; the echelon
  // rows whose left half vanishes span A n B.
  Echelon e;
  for (const auto& x : a.basis()) {
    SparseVec v;
    for (const auto& [idx, c] : x) {
      v.emplace(tagged(0, idx), c);
      v.emplace(tagged(1, idx), c);
    }
    e.insert(std::move(v));
  }
  for (const auto& y : b.basis()) {
    SparseVec v;
    for (const auto& [idx, c] : y) v.emplace(tagged(0, idx), c);
    e.insert(std::move(v));
  }
  std::vector<SparseVec> gens;
  for (const auto& [pivot, row] : e.by_pivot()) {
    if (pivot[0] != 1) continue;
    SparseVec v;
    for (const auto& [idx, c] : row) v.emplace(Index(idx.begin() + 1, idx.end()), c);
    gens.push_back(std::move(v));
  }
  return Window::subspace(gens);
}

Window window_product(const Window& w, const Window& v, const BasisProduct& product) {
  if (w.is_monomial() && v.is_monomial()) {
    std::set<Index> out;
    bool monomial = true;
    for (const auto& x : w.indices()) {
      for (const auto& y : v.indices()) {
        auto p = product(x, y);
        if (p.size() > 1) {
          monomial = false;
          break;
        }
        if (p.size() == 1) out.insert(p.front().first);
      }
      if (!monomial) break;
    }
    if (monomial) return Window::monomial(std::move(out));
  }
  std::vector<SparseVec> gens;
  for (const auto& x : w.basis())
    for (const auto& y : v.basis()) {
      SparseVec acc;
      for (const auto& [i, a] : x)
        for (const auto& [j, b] : y)
          for (const auto& [k, c] : product(i, j)) {
            acc[k] += a * b * c;
            if (sgn(acc[k]) == 0) acc.erase(k);
          }
      gens.push_back(std::move(acc));
    }
  return Window::subspace(gens);
}

Rational invariance_defect(const Window& w, const Window& v, const BasisProduct& product) {
  if (w.empty()) throw InvalidInput("invariance defect of the zero window");
  Window wv = window_product(w, v, product);
  Window total = w.kind() == wv.kind() ? window_sum(w, wv) : window_sum(w.as_subspace(), wv.as_subspace());
  return ratio(static_cast<long>(total.dim()), static_cast<long>(w.dim())) - 1;
}

Window translate(const Window& w, const Index& c) {
  if (w.is_monomial()) {
    std::set<Index> out;
    for (const auto& idx : w.indices()) out.insert(add_index(idx, c));
    return Window::monomial(std::move(out));
  }
  std::vector<SparseVec> gens;
  for (const auto& r : w.basis()) {
    SparseVec v;
    for (const auto& [idx, x] : r) v.emplace(add_index(idx, c), x);
    gens.push_back(std::move(v));
  }
  return Window::subspace(gens);
}

Window box_window(int lo, int hi, int d) {
  if (d < 1) throw InvalidInput("box dimension must be >= 1");
  std::set<Index> out;
  if (hi <= lo) return Window::monomial(out);
  Index cur(d, lo);
  while (true) {
    out.insert(cur);
    int i = d - 1;
    while (i >= 0 && ++cur[i] == hi) cur[i--] = lo;
    if (i < 0) break;
  }
  return Window::monomial(std::move(out));
}

Window degree_window(int lo, int hi, int field_degree, int vars) {
  if (lo < 0) throw InvalidInput("degree windows start at exponent >= 0");
  std::set<Index> out;
  std::set<Index> exps{Index{}};  // no variables: the window is E itself
  if (vars > 0) exps = box_window(lo, hi, vars).indices();
  for (int j = 0; j < field_degree; ++j)
    for (const auto& e : exps) {
      Index idx{j};
      idx.insert(idx.end(), e.begin(), e.end());
      out.insert(std::move(idx));
    }
  return Window::monomial(std::move(out));
}

Window full_group_window(int order) {
  std::set<Index> out;
  for (int g = 0; g < order; ++g) out.insert({g});
  return Window::monomial(std::move(out));
}

WindowSchedule parse_schedule(const std::string& text, const IndexShape& shape) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("schedule needs the form kind:spec", 0);
  std::string kind = text.substr(0, colon);
  std::string body = text.substr(colon + 1);
  body.erase(std::remove_if(body.begin(), body.end(), [](unsigned char c) { return std::isspace(c); }), body.end());
  WindowSchedule s{text, {}, {}};

  if (kind == "group") {
    if (body != "full") throw ParseError("only group:full is supported", colon + 1);
    if (shape.kind != IndexShape::Kind::FiniteGroup) throw InvalidInput("group:full needs a finite group");
    s.sizes = {shape.order};
    s.windows = {full_group_window(shape.order)};
    return s;
  }
  if (kind != "box" && kind != "degrees") throw ParseError("unknown schedule kind '" + kind + "'", 0);
  if (kind == "box" && shape.kind == IndexShape::Kind::FiniteGroup)
    throw InvalidInput("box schedules need Z^d or a polynomial extension");
  if (kind == "degrees" && shape.kind != IndexShape::Kind::Tensor)
    throw InvalidInput("degree schedules need a polynomial extension");

  std::vector<std::pair<int, int>> ranges;  // [lo, hi)
  std::smatch m;
  static const std::regex power(R"(^(\d+)\^k,k=(\d+)\.\.(\d+)$)");
  static const std::regex range(R"(^(-?\d+)\.\.(-?\d+)(\^(\d+))?$)");
  static const std::regex list(R"(^\d+(,\d+)*$)");
  if (std::regex_match(body, m, power)) {
    long base = std::stol(m[1]);
    int a = std::stoi(m[2]), b = std::stoi(m[3]);
    if (base < 2 || a > b || b > 40) throw InvalidInput("bad geometric schedule '" + body + "'");
    for (int k = a; k <= b; ++k) {
      long v = 1;
      for (int i = 0; i < k; ++i) v *= base;
      if (v > (1L << 20)) throw InvalidInput("schedule window too large");
      ranges.emplace_back(0, static_cast<int>(v));
    }
  } else if (std::regex_match(body, m, range)) {
    int lo = std::stoi(m[1]), hi = std::stoi(m[2]);
    if (m[4].matched && std::stoi(m[4]) != shape.d)
      throw InvalidInput("box dimension " + std::string(m[4]) + " does not match the ring (" + std::to_string(shape.d) + ")");
    if (hi <= lo) throw InvalidInput("empty range in schedule");
    ranges.emplace_back(lo, hi);
  } else if (std::regex_match(body, list)) {
    for (const auto& part : [&] {
           std::vector<std::string> parts;
           std::string cur;
           for (char c : body) {
             if (c == ',') {
               parts.push_back(cur);
               cur.clear();
             } else {
               cur += c;
             }
           }
           parts.push_back(cur);
           return parts;
         }()) {
      int n = std::stoi(part);
      if (n < 1) throw InvalidInput("window sizes must be positive");
      ranges.emplace_back(0, n);
    }
  } else {
    throw ParseError("cannot parse schedule '" + body + "'", colon + 1);
  }

  for (const auto& [lo, hi] : ranges) {
    s.sizes.push_back(hi - lo);
    if (shape.kind == IndexShape::Kind::Lattice) s.windows.push_back(box_window(lo, hi, shape.d));
    else s.windows.push_back(degree_window(lo, hi, shape.field_degree, shape.d));
  }
  for (std::size_t i = 1; i < s.windows.size(); ++i)
    if (s.sizes[i] <= s.sizes[i - 1] || !s.windows[i].contains(s.windows[i - 1]))
      throw InvalidInput("schedule windows must be strictly increasing and nested");
  return s;
}

Quasitiling ow_quasitile_boxes(int d, int n, int N, const Rational& eps) {
  if (d < 1 || n < 1 || N < n) throw InvalidInput("need d >= 1 and 1 <= n <= N");
  if (eps <= 0 || eps >= 1) throw InvalidInput("epsilon must lie in (0, 1)");
  const int per_side = N / n;
  BigInt covered = 1, total = 1;
  for (int i = 0; i < d; ++i) {
    covered *= n * per_side;
    total *= N;
  }
  Rational coverage(covered, total);
  coverage.canonicalize();
  if (coverage < 1 - eps)
    throw TilingTooCoarse("box tiling covers " + to_string(coverage) + " < 1 - " + to_string(eps) + "; raise N");
  Quasitiling q;
  q.tiles = {box_window(0, n, d)};
  q.epsilon = eps;
  q.coverage = coverage;
  q.centers.emplace_back();
  q.subwindows.emplace_back();
  const Window grid = box_window(0, per_side, d);
  for (const auto& c : grid.indices()) {
    Index center(d);
    for (int i = 0; i < d; ++i) center[i] = c[i] * n;
    q.centers[0].push_back(center);
    q.subwindows[0].push_back(q.tiles[0]);
  }
  return q;
}

Quasitiling kt_quasitile(int n, int N) {
  if (n < 1 || N < 1) throw InvalidInput("need positive degrees");
  if (N % n != 0) throw InvalidInput("tile degree must divide the window degree");
  Quasitiling q;
  q.tiles = {degree_window(0, n, 1, 1)};
  q.epsilon = Rational(0);
  q.coverage = Rational(1);
  q.centers.emplace_back();
  q.subwindows.emplace_back();
  for (int l = 0; l < N / n; ++l) {
    q.centers[0].push_back({0, l * n});
    q.subwindows[0].push_back(q.tiles[0]);
  }
  return q;
}

QuasitilingReport check_quasitiling(const Quasitiling& q, const Window& target) {
  QuasitilingReport r;
  if (q.centers.size() != q.tiles.size() || q.subwindows.size() != q.tiles.size())
    throw InvalidInput("quasitiling has inconsistent tile data");

  for (std::size_t j = 0; j < q.tiles.size() && r.subwindow_size.passed; ++j) {
    if (q.subwindows[j].size() != q.centers[j].size()) throw InvalidInput("one subwindow per center is required");
    const Rational bound = (1 - q.epsilon) * static_cast<long>(q.tiles[j].dim());
    for (std::size_t c = 0; c < q.centers[j].size(); ++c) {
      const Window& sub = q.subwindows[j][c];
      if (!q.tiles[j].contains(sub) || Rational(static_cast<long>(sub.dim())) < bound) {
        r.subwindow_size = {false, "subwindow of tile " + std::to_string(j) + " at " + index_string(q.centers[j][c]) +
                                       " has dim " + std::to_string(sub.dim()) + " < " + to_string(bound),
                            {q.centers[j][c]}};
        break;
      }
    }
  }

  // (ii) independence of the translated subwindows
  std::vector<std::pair<Index, Window>> pieces;
  for (std::size_t j = 0; j < q.tiles.size(); ++j)
    for (std::size_t c = 0; c < q.centers[j].size(); ++c)
      pieces.emplace_back(q.centers[j][c], translate(q.subwindows[j][c], q.centers[j][c]));
  bool all_monomial = std::all_of(pieces.begin(), pieces.end(), [](const auto& p) { return p.second.is_monomial(); });
  std::size_t expected = 0;
  for (const auto& p : pieces) expected += p.second.dim();
  if (all_monomial) {
    std::map<Index, std::size_t> owner;
    for (std::size_t k = 0; k < pieces.size() && r.independence.passed; ++k)
      for (const auto& idx : pieces[k].second.indices()) {
        auto [it, fresh] = owner.emplace(idx, k);
        if (!fresh) {
          r.independence = {false, "translates at " + index_string(pieces[it->second].first) + " and " +
                                       index_string(pieces[k].first) + " share " + index_string(idx),
                            {pieces[it->second].first, pieces[k].first}};
          break;
        }
      }
    std::set<Index> all;
    for (const auto& p : pieces) all.insert(p.second.indices().begin(), p.second.indices().end());
    r.direct_sum_dim = all.size();
  } else {
    Echelon e;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      bool dependent = false;
      for (const auto& v : pieces[k].second.basis()) dependent = !e.insert(v) || dependent;
      if (!dependent || !r.independence.passed) continue;
      r.independence = {false, "translate at " + index_string(pieces[k].first) + " depends on earlier translates",
                        {pieces[k].first}};
      for (std::size_t l = 0; l < k; ++l)
        if (window_intersect(pieces[l].second.as_subspace(), pieces[k].second.as_subspace()).dim() > 0) {
          r.independence = {false, "translates at " + index_string(pieces[l].first) + " and " +
                                       index_string(pieces[k].first) + " intersect",
                            {pieces[l].first, pieces[k].first}};
          break;
        }
    }
    r.direct_sum_dim = e.size();
  }
  if (r.independence.passed && r.direct_sum_dim != expected)
    r.independence = {false, "sum has dim " + std::to_string(r.direct_sum_dim) + " != " + std::to_string(expected), {}};

  // (iii) containment and coverage of the full-tile translates
  std::vector<Window> full;
  for (std::size_t j = 0; j < q.tiles.size(); ++j)
    for (const auto& c : q.centers[j]) {
      Window w = translate(q.tiles[j], c);
      if (r.coverage.passed && !target.contains(w))
        r.coverage = {false, "translate at " + index_string(c) + " leaves the target window", {c}};
      full.push_back(std::move(w));
    }
  if (r.coverage.passed) {
    std::size_t covered = 0;
    if (std::all_of(full.begin(), full.end(), [](const Window& w) { return w.is_monomial(); })) {
      std::set<Index> all;
      for (const auto& w : full) all.insert(w.indices().begin(), w.indices().end());
      covered = all.size();
    } else {
      Echelon e;
      for (const auto& w : full)
        for (const auto& v : w.basis()) e.insert(v);
      covered = e.size();
    }
    Rational need = (1 - q.epsilon) * static_cast<long>(target.dim());
    if (Rational(static_cast<long>(covered)) < need)
      r.coverage = {false, "tiles cover dim " + std::to_string(covered) + " < " + to_string(need), {}};
    else
      r.coverage.detail = "covered dim " + std::to_string(covered) + " of " + std::to_string(target.dim());
  }
  return r;
}

nlohmann::json to_json(const Window& w) {
  nlohmann::json out;
  out["kind"] = w.is_monomial() ? "monomial" : "subspace";
  out["dim"] = w.dim();
  if (w.is_monomial()) {
    out["indices"] = nlohmann::json::array();
    for (const auto& idx : w.indices()) out["indices"].push_back(idx);
  } else {
    out["basis"] = nlohmann::json::array();
    for (const auto& row : w.basis()) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& [idx, c] : row) r.push_back({{"index", idx}, {"coeff", to_string(c)}});
      out["basis"].push_back(r);
    }
  }
  return out;
}

nlohmann::json to_json(const QuasitilingReport& r) {
  auto cond = [](const ConditionResult& c) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& idx : c.witness) w.push_back(idx);
    return nlohmann::json{{"passed", c.passed}, {"detail", c.detail}, {"witness", w}};
  };
  return {{"passed", r.passed()},
          {"subwindow_size", cond(r.subwindow_size)},
          {"independence", cond(r.independence)},
          {"coverage", cond(r.coverage)},
          {"direct_sum_dim", r.direct_sum_dim}};
}

nlohmann::json to_json(const Quasitiling& q) {
  nlohmann::json tiles = nlohmann::json::array();
  for (std::size_t j = 0; j < q.tiles.size(); ++j) {
    nlohmann::json centers = nlohmann::json::array();
    for (const auto& c : q.centers[j]) centers.push_back(c);
    tiles.push_back({{"tile_dim", q.tiles[j].dim()}, {"centers", centers}});
  }
  return {{"tiles", tiles}, {"epsilon", to_string(q.epsilon)}, {"coverage", to_string(q.coverage)}};
}

}  // namespace sylvan
