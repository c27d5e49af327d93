// sylvan: command-line front end. Every subcommand writes one JSON report
// (stdout or --out) and optionally a CSV of the limit samples (--csv).
// Exit codes: 0 ok, 1 input error, 2 limit not stabilized.

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sylvan/field_ext.hpp"
#include "sylvan/io.hpp"
#include "sylvan/samplers.hpp"
#include "sylvan/trace_compare.hpp"

#ifndef SYLVAN_VERSION
#define SYLVAN_VERSION "0.0.0"
#endif

namespace {

using namespace sylvan;
using json = nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr int kExitInput = 1;
constexpr int kExitNotStabilized = 2;

struct Options {
  std::string spec, matrix, schedule, out, csv;
  int kappa = 3;
  std::string tol = "0";
  std::optional<std::uint64_t> seed;
  int trials = 200;
  int jobs = 0;
  bool no_affine = false;

  std::string mode = "companion", f, roots, degrees = "2,4,8,16,32,64", family = "powers", point_list, enlarge;
  int points = 64;
  std::string inner_schedule = "degrees:2^k,k=1..5", outer_schedule = "degrees:2^k,k=1..4";

  std::string rank = "field", field = "Q", group = "Z/2", weights = "1/3,2/3";
  std::size_t size = 2, max_size = 6;

  std::string tiling = "ow", eps = "1/4";
  int d = 1, n = 4, big_n = 16;
};

struct Outcome {
  json report = json::object();
  int exit_code = 0;
  std::string csv;
};

template <class S>
struct is_crossed_product : std::false_type {};
template <class R>
struct is_crossed_product<CrossedProduct<R>> : std::true_type {};
template <class S>
struct is_tensor_ext : std::false_type {};
template <class R>
struct is_tensor_ext<TensorExt<R>> : std::true_type {};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("SYLVAN_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidInput(std::string("SYLVAN_SEED is not an unsigned integer: ") + env);
    }
  }
  return 0;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<Rational> rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& s : split_list(text)) out.push_back(parse_rational(s));
  return out;
}

std::vector<int> int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& s : split_list(text)) {
    try {
      out.push_back(std::stoi(s));
    } catch (const std::exception&) {
      throw InvalidInput("expected an integer, got '" + s + "'");
    }
  }
  return out;
}

// A path, or inline JSON when the text starts with '{' or '['.
json read_json_arg(const std::string& text, const std::string& flag) {
  if (text.empty()) throw InvalidInput(flag + " is required");
  auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) return parse_json_text(text);
  return load_json(text);
}

LimitOptions limit_options(const Options& o) {
  LimitOptions l;
  l.kappa = o.kappa;
  l.tol = parse_rational(o.tol);
  l.allow_affine = !o.no_affine;
  return l;
}

json config_json(const std::string& command, const Options& o) {
  json c{{"command", command}, {"kappa", o.kappa}, {"tol", o.tol}, {"trials", o.trials}, {"jobs", o.jobs},
         {"allow_affine", !o.no_affine}};
  auto put = [&](const char* key, const std::string& v) {
    if (!v.empty()) c[key] = v;
  };
  put("spec", o.spec);
  put("matrix", o.matrix);
  put("schedule", o.schedule);
  if (command == "fieldext" || command == "tower") {
    c["mode"] = command == "tower" ? "tower" : o.mode;
    put("f", o.f);
    put("roots", o.roots);
    put("degrees", o.degrees);
    put("family", o.family);
    put("point_list", o.point_list);
    put("enlarge", o.enlarge);
    c["points"] = o.points;
    c["inner_schedule"] = o.inner_schedule;
    c["outer_schedule"] = o.outer_schedule;
  }
  if (command == "axioms") {
    c["rank"] = o.rank;
    c["field"] = o.field;
    c["group"] = o.group;
    c["weights"] = o.weights;
    c["size"] = o.size;
    c["max_size"] = o.max_size;
    put("f", o.f);
  }
  if (command == "quasitile") {
    c["tiling"] = o.tiling;
    c["eps"] = o.eps;
    c["d"] = o.d;
    c["n"] = o.n;
    c["N"] = o.big_n;
  }
  return c;
}

template <class S>
std::string default_schedule(const S& s) {
  if constexpr (is_crossed_product<S>::value) {
    if (s.group().is_finite()) return "group:full";
    return s.group().rank() == 1 ? "box:2^k,k=2..8" : "box:2^k,k=1..4";
  } else {
    if (s.variables().empty()) return "degrees:1";
    return s.variables().size() == 1 ? "degrees:2^k,k=1..6" : "degrees:2^k,k=1..4";
  }
}

// ---------------------------------------------------------------------------

Outcome run_rank(const Options& o, std::uint64_t) {
  json spec = read_json_arg(o.spec, "--spec");
  json mj = read_json_arg(o.matrix, "--matrix");
  return visit_extension(spec, [&](const auto& s, const auto& rk) {
    auto a = parse_matrix(s, mj);
    std::string sched = o.schedule.empty() ? default_schedule(s) : o.schedule;
    auto rep = limit_rank(s, a, parse_schedule(sched, index_shape(s)), rk, limit_options(o));
    Outcome out;
    out.report = {{"extension", s.descriptor()}, {"rank_function", rk.name}, {"schedule", sched},
                  {"matrix", matrix_to_json(s, a)}, {"report", to_json(rep)}};
    out.csv = to_csv(rep);
    out.exit_code = rep.stabilized ? 0 : kExitNotStabilized;
    return out;
  });
}

template <RingContext R>
Outcome fieldext_tower(const TensorExt<R>& s, const RankFunction<R>& rk, const Matrix<typename TensorExt<R>::Elem>& a,
                       const Options& o) {
  CompositionReport rep;
  if (s.variables().size() == 2) {
    std::string one = o.schedule.empty() ? "degrees:2^k,k=1..4" : o.schedule;
    rep = nested_composition_check(s, a, one, o.inner_schedule, o.outer_schedule, rk, limit_options(o));
  } else if constexpr (std::is_same_v<R, RationalField>) {
    std::string sched = o.schedule.empty() ? "degrees:2^k,k=1..6" : o.schedule;
    rep = composition_check(s, a, sched, limit_options(o));
  } else {
    throw InvalidInput("tower mode needs E (x) Q[t] over Q, or R[t, u]");
  }
  Outcome out;
  out.report = to_json(rep);
  out.csv = to_csv(rep.one_step);
  out.exit_code = rep.agree ? 0 : kExitNotStabilized;
  return out;
}

template <RingContext R>
Outcome fieldext_mode(const TensorExt<R>& s, const RankFunction<R>& rk, const Matrix<typename TensorExt<R>::Elem>& a,
                      const Options& o, const std::string& mode) {
  Outcome out;
  out.report["extension"] = s.descriptor();
  out.report["rank_function"] = rk.name;
  if (mode == "companion") {
    if (!o.f.empty()) {
      auto f = monic_from(parse_poly(o.f));
      out.report["f"] = to_string(f, s.variables().at(0));
      out.report["degree"] = f.degree();
      out.report["value"] = to_string(rk_f(s, a, f, rk));
      return out;
    }
    MonicFamily family;
    if (o.family == "powers") family = MonicFamily::Powers;
    else if (o.family == "roots") family = MonicFamily::RootProducts;
    else throw InvalidInput("--family must be powers or roots");
    auto rep = monic_sequence_limit(s, a, int_list(o.degrees), rk, family, limit_options(o));
    out.report["report"] = to_json(rep);
    out.csv = to_csv(rep.limit);
    out.exit_code = rep.limit.stabilized ? 0 : kExitNotStabilized;
  } else if (mode == "roots") {
    auto roots = rational_list(o.roots);
    Rational by_roots = rk_f_by_roots(s, a, roots, rk);
    Rational companion = rk_f(s, a, monic_from_roots(roots), rk);
    json rs = json::array();
    for (const auto& x : roots) rs.push_back(to_string(x));
    out.report["roots"] = rs;
    out.report["value"] = to_string(by_roots);
    out.report["companion_value"] = to_string(companion);
    out.report["agree"] = by_roots == companion;
  } else if (mode == "evalpoints") {
    auto points = o.point_list.empty() ? default_points(s.base(), static_cast<std::size_t>(o.points))
                                       : rational_list(o.point_list);
    auto rep = eval_point_limit(s, a, points, rk, limit_options(o));
    out.report["report"] = to_json(rep);
    out.csv = to_csv(rep.limit);
    out.exit_code = rep.limit.stabilized ? 0 : kExitNotStabilized;
  } else if (mode == "algebraic") {
    Rational value = algebraic_ext_rank(s, a, rk);
    Rational window = algebraic_window_rank(s, a, rk);
    out.report["field"] = s.field().descriptor();
    out.report["value"] = to_string(value);
    out.report["window_value"] = to_string(window);
    out.report["agree"] = value == window;
    if (!o.enlarge.empty()) {
      json ej = o.enlarge.front() == '{' ? parse_json_text(o.enlarge) : json(o.enlarge);
      FiniteExtField e2 = parse_field(ej);
      FiniteExtField e1 = tensor(s.field(), e2);
      TensorExt<R> s1(s.base(), e1, s.variables());
      auto emb = validate_embedding(s.field(), e1, tensor_embedding(s.field(), e2));
      Rational enlarged = algebraic_ext_rank(s1, embed_matrix(s, s1, emb, a), rk);
      out.report["enlarged_field"] = e1.descriptor();
      out.report["enlarged_value"] = to_string(enlarged);
      out.report["unchanged"] = enlarged == value;
    }
  } else if (mode == "tower") {
    return fieldext_tower(s, rk, a, o);
  } else {
    throw InvalidInput("--mode must be companion, roots, evalpoints, algebraic or tower");
  }
  return out;
}

Outcome run_fieldext(const Options& o, const std::string& mode) {
  json spec = read_json_arg(o.spec, "--spec");
  json mj = read_json_arg(o.matrix, "--matrix");
  return visit_extension(spec, [&](const auto& s, const auto& rk) -> Outcome {
    using S = std::decay_t<decltype(s)>;
    if constexpr (is_tensor_ext<S>::value) {
      auto a = parse_matrix(s, mj);
      Outcome out = fieldext_mode(s, rk, a, o, mode);
      out.report["matrix"] = matrix_to_json(s, a);
      return out;
    } else {
      throw InvalidInput("fieldext needs a poly_ext or finite_ext spec");
    }
  });
}

Outcome run_trace_compare(const Options& o, std::uint64_t seed) {
  json spec = read_json_arg(o.spec, "--spec");
  json mj = read_json_arg(o.matrix, "--matrix");
  return visit_extension(spec, [&](const auto& s, const auto& rk) -> Outcome {
    using S = std::decay_t<decltype(s)>;
    if constexpr (is_crossed_product<S>::value) {
      auto a = parse_matrix(s, mj);
      std::string sched = o.schedule.empty() ? default_schedule(s) : o.schedule;
      GenericRankOptions g;
      g.seed = seed;
      auto rep = trace_compare(s, a, sched, rk, limit_options(o), g);
      Outcome out;
      out.report = to_json(rep);
      out.report["extension"] = s.descriptor();
      out.report["schedule"] = sched;
      out.report["matrix"] = matrix_to_json(s, a);
      out.csv = to_csv(rep.window);
      out.exit_code = rep.window.stabilized ? 0 : kExitNotStabilized;
      return out;
    } else {
      throw InvalidInput("trace-compare needs a crossed_product spec");
    }
  });
}

template <RingContext R>
json axioms_for(const R& ring, const RankFunction<R>& rk, const ElementSampler<R>& sampler, const Options& o,
                std::uint64_t seed) {
  return to_json(check_axioms(ring, rk, sampler, o.trials, seed, o.max_size));
}

Outcome run_axioms(const Options& o, std::uint64_t seed) {
  Outcome out;
  if (o.rank == "field") {
    out.report = std::visit(
        [&](const auto& ring) { return axioms_for(ring, default_rank(ring, json::object()), element_sampler(ring), o, seed); },
        parse_coefficients(json(o.field)));
  } else if (o.rank == "matrix") {
    MatrixRing<RationalField> ring(o.size);
    out.report = axioms_for(ring, matrix_ring_rank(ring), element_sampler(ring), o, seed);
  } else if (o.rank == "product") {
    auto w = rational_list(o.weights);
    ProductRing<RationalField> ring(w.size());
    out.report = axioms_for(ring, product_ring_rank(ring, w), element_sampler(ring), o, seed);
  } else if (o.rank == "companion") {
    TensorExt<RationalField> ring(RationalField{}, {"t"});
    auto f = monic_from(parse_poly(o.f.empty() ? "t^2 - 1" : o.f));
    out.report = axioms_for(ring, companion_rank(ring, f, field_rank(RationalField{})), element_sampler(ring), o, seed);
  } else if (o.rank == "trace") {
    CrossedProduct<RationalField> ring(RationalField{}, parse_group(json(o.group)));
    out.report = axioms_for(ring, trace_rank(ring, field_rank(RationalField{})), element_sampler(ring), o, seed);
  } else {
    throw InvalidInput("--rank must be field, matrix, product, companion or trace");
  }
  return out;
}

Outcome run_quasitile(const Options& o) {
  Quasitiling q;
  Window target;
  if (o.tiling == "ow") {
    q = ow_quasitile_boxes(o.d, o.n, o.big_n, parse_rational(o.eps));
    target = box_window(0, o.big_n, o.d);
  } else if (o.tiling == "kt") {
    q = kt_quasitile(o.n, o.big_n);
    target = degree_window(0, o.big_n, 1, 1);
  } else {
    throw InvalidInput("--tiling must be ow or kt");
  }
  auto rep = check_quasitiling(q, target);
  Outcome out;
  out.report = {{"tiling", to_json(q)}, {"target", to_json(target)}, {"check", to_json(rep)}, {"passed", rep.passed()}};
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write '" + path + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sylvester rank functions on crossed products and polynomial extensions"};
  app.set_version_flag("--version", SYLVAN_VERSION);
  app.set_config("--config", "", "Read options from a TOML/INI file; command-line flags take precedence");
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool limits) {
    sub->add_option("--spec", o.spec, "Extension spec: JSON file or inline JSON");
    sub->add_option("--matrix", o.matrix, "Matrix: JSON file or inline JSON");
    sub->add_option("--seed", o.seed, "Random seed (fallback: SYLVAN_SEED, then 0)");
    sub->add_option("--trials", o.trials, "Random trials")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "Write the JSON report here instead of stdout");
    sub->add_option("--jobs", o.jobs, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
    if (limits) {
      sub->add_option("--schedule", o.schedule, "Window schedule, e.g. box:2^k,k=2..8 or degrees:4,8,16 or group:full");
      sub->add_option("--kappa", o.kappa, "Consecutive steps required for stabilization")->check(CLI::Range(2, 1000));
      sub->add_option("--tol", o.tol, "Stabilization tolerance (rational)");
      sub->add_option("--csv", o.csv, "Write step,dimW,rank_value_num,rank_value_den,normalized_decimal,"
                                      "invariance_defect_decimal here");
      sub->add_flag("--no-affine", o.no_affine, "Disable the exact affine-tail stabilization rule");
    }
  };

  auto* rank = app.add_subcommand("rank", "Window rank limit of a matrix over an extension");
  common(rank, true);

  auto* fieldext = app.add_subcommand("fieldext", "Ranks over K(t) and finite extensions via finite quotients");
  common(fieldext, true);
  fieldext->add_option("--mode", o.mode, "companion | roots | evalpoints | algebraic | tower")
      ->check(CLI::IsMember({"companion", "roots", "evalpoints", "algebraic", "tower"}));
  fieldext->add_option("--f", o.f, "Monic f for a single rk_f (companion mode)");
  fieldext->add_option("--degrees", o.degrees, "Degrees of the monic family (companion mode)");
  fieldext->add_option("--family", o.family, "powers (t^d) or roots ((t-1)...(t-d))");
  fieldext->add_option("--roots", o.roots, "Distinct roots, comma separated (roots mode)");
  fieldext->add_option("--points", o.points, "Number of evaluation points 1..N (evalpoints mode)");
  fieldext->add_option("--point-list", o.point_list, "Explicit evaluation points, comma separated");
  fieldext->add_option("--enlarge", o.enlarge, "Field E2; recompute inside E0 (x) E2 (algebraic mode)");
  fieldext->add_option("--inner-schedule", o.inner_schedule, "Inner t-schedule (nested tower)");
  fieldext->add_option("--outer-schedule", o.outer_schedule, "Outer u-schedule (nested tower)");

  auto* tower = app.add_subcommand("tower", "Composition check: one-step against two-step extension ranks");
  common(tower, true);
  tower->add_option("--inner-schedule", o.inner_schedule, "Inner t-schedule (nested tower)");
  tower->add_option("--outer-schedule", o.outer_schedule, "Outer u-schedule (nested tower)");

  auto* trace = app.add_subcommand("trace-compare", "Trace rank against the window rank limit");
  common(trace, true);

  auto* axioms = app.add_subcommand("axioms", "Randomized check of the Sylvester rank axioms");
  common(axioms, false);
  axioms->add_option("--rank", o.rank, "field | matrix | product | companion | trace");
  axioms->add_option("--field", o.field, "Coefficients for --rank field: Q, gf7, Q(i), M2(Q), QxQ");
  axioms->add_option("--size", o.size, "Matrix ring size for --rank matrix");
  axioms->add_option("--weights", o.weights, "Weights for --rank product, comma separated");
  axioms->add_option("--f", o.f, "Monic f for --rank companion (default t^2 - 1)");
  axioms->add_option("--group", o.group, "Finite group for --rank trace: Z/2, Z/3, Z/2xZ/2, S3");
  axioms->add_option("--max-size", o.max_size, "Largest random matrix dimension");

  auto* quasitile = app.add_subcommand("quasitile", "Build a quasitiling and check its three conditions");
  common(quasitile, false);
  quasitile->add_option("--tiling", o.tiling, "ow (boxes in Z^d) or kt (degree windows)");
  quasitile->add_option("--d", o.d, "Lattice rank for ow");
  quasitile->add_option("--n", o.n, "Tile side / degree");
  quasitile->add_option("--N", o.big_n, "Target side / degree");
  quasitile->add_option("--eps", o.eps, "Epsilon (rational, ow only)");

  CLI11_PARSE(app, argc, argv);

  std::string command = app.get_subcommands().front()->get_name();
  try {
    if (o.jobs > 0) omp_set_num_threads(o.jobs);
    const std::uint64_t seed = resolve_seed(o);
    Outcome out;
    if (command == "rank") out = run_rank(o, seed);
    else if (command == "fieldext") out = run_fieldext(o, o.mode);
    else if (command == "tower") out = run_fieldext(o, "tower");
    else if (command == "trace-compare") out = run_trace_compare(o, seed);
    else if (command == "axioms") out = run_axioms(o, seed);
    else out = run_quasitile(o);

    json report{{"schema_version", kSchemaVersion},
                {"tool", "sylvan"},
                {"version", SYLVAN_VERSION},
                {"command", command},
                {"seed", seed},
                {"config", config_json(command, o)},
                {"exit_code", out.exit_code}};
    report.update(out.report);
    const std::string text = report.dump(2) + "\n";
    if (o.out.empty()) std::cout << text;
    else write_text(o.out, text);
    if (!o.csv.empty()) {
      if (out.csv.empty()) std::cerr << "sylvan: " << command << " produced no limit samples; no CSV written\n";
      else write_text(o.csv, out.csv);
    }
    if (out.exit_code == kExitNotStabilized)
      std::cerr << "sylvan: the limit did not stabilize along the schedule; extend it or raise --tol\n";
    return out.exit_code;
  } catch (const NotStabilized& e) {
    std::cerr << "sylvan: " << e.what() << "\n";
    return kExitNotStabilized;
  } catch (const ParseError& e) {
    std::cerr << "sylvan: parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InternalError& e) {
    std::cerr << "sylvan: internal error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "sylvan: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "sylvan: malformed input: " << e.what() << "\n";
    return kExitInput;
  }
}
