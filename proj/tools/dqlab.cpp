// dqlab: measure, verify, sweep, construct, demo.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dqlab/builtin.hpp"
#include "dqlab/constructions.hpp"
#include "dqlab/report.hpp"
#include "dqlab/suites.hpp"

namespace {

using namespace dqlab;

ScoreKind parse_kind(const std::string& s) {
  if (s == "success") return ScoreKind::success;
  if (s == "hellinger") return ScoreKind::hellinger;
  if (s == "entropy") return ScoreKind::entropy;
  throw InputError("unknown score '" + s + "'");
}

bool exact_mode() {
  const char* v = std::getenv("DQLAB_EXACT");
  return v && std::string(v) == "1";
}

// Best rational approximation with bounded denominator (continued fractions),
// used to snap real weights and discounts into the exact engine.
std::pair<long long, long long> snap_rational(double x, long long max_den) {
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    long long a = (long long)std::floor(v);
    long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = v - (double)a;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  return {p1, q1};
}

std::string read_text(const std::string& arg) {
  std::FILE* fp = std::fopen(arg.c_str(), "rb");
  if (!fp) return arg;  // treat the argument itself as inline text
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, fp)) > 0) out.append(buf, got);
  std::fclose(fp);
  return out;
}

struct CommonOpts {
  std::string fn, dist = "unif", score = "success";
  std::optional<double> gamma, alpha;
  int n = 1;
  std::uint64_t seed = 1;
  int jobs = 0;
  std::size_t budget = 5'000'000;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool need_fn) {
  auto* fn = cmd->add_option("--fn", o.fn, "function name or file");
  if (need_fn) fn->required();
  cmd->add_option("--dist", o.dist, "distribution name or file");
  cmd->add_option("--score", o.score, "success|hellinger|entropy");
  cmd->add_option("--gamma", o.gamma, "target score");
  cmd->add_option("--alpha", o.alpha, "discount rate");
  cmd->add_option("--n", o.n, "direct-product power");
  cmd->add_option("--seed", o.seed, "rng seed");
  cmd->add_option("--jobs", o.jobs, "worker count (0 = hardware)");
  cmd->add_option("--budget-states", o.budget, "solver state cap");
  cmd->add_option("--format", o.format)
      ->check(CLI::IsMember({"json", "csv"}));
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_measure(const CommonOpts& o, const std::string& what,
                bool dist_given) {
  BoolFn f = resolve_function(o.fn);
  Dist mu = resolve_dist(o.dist, f);
  if (o.n > 1) {
    f = BoolFn::product(f, o.n);
    mu = Dist::product(mu, o.n);
  }
  ScoreKind kind = parse_kind(o.score);
  Json j = report_envelope("measure");
  j.set("measure", Json::string(what));
  j.set("fn", Json::string(o.fn));
  j.set("score", Json::string(o.score));
  auto need_gamma = [&] {
    if (!o.gamma) throw InputError("--gamma is required for " + what);
    return *o.gamma;
  };
  if (what == "DS") {
    if (!o.alpha) throw InputError("--alpha is required for DS");
    j.set("dist", Json::string(o.dist));
    j.set("alpha", Json::number(*o.alpha));
    DsResult r = discounted_score(f, mu, *o.alpha, kind, TieBreak::prefer_stop,
                                  o.budget);
    j.set("value", Json::number(r.value));
    j.set("witness_score", Json::number(r.score));
    j.set("witness", Json::string(r.witness.to_sexpr()));
    if (exact_mode() && kind == ScoreKind::success) {
      std::vector<long long> num(f.domain().size());
      for (std::size_t i = 0; i < num.size(); ++i) {
        auto [p, q] = snap_rational(mu.weight(f.domain()[i]), 720720);
        num[i] = p * (720720 / q);
      }
      auto [dn, dd] = snap_rational(std::exp(-*o.alpha), 1'000'000);
      ExactValue ev = discounted_score_exact(f, num, dn, dd, o.budget);
      j.set("value_exact", Json::string(ev.repr));
      j.set("value_exact_approx", Json::number(ev.approx));
    }
  } else if (what == "R") {
    double g = need_gamma();
    j.set("gamma", Json::number(g));
    WorstCaseResult r = worst_case_R(f, g, {o.budget});
    j.set("value", Json::integer(r.depth));
    j.set("game_value", Json::number(r.game_value));
    j.set("witness", Json::string(r.witness.serialize()));
  } else if (what == "avgR") {
    double g = need_gamma();
    j.set("gamma", Json::number(g));
    WorstCaseAvgResult r = worst_case_avg_R(f, g, {o.budget});
    j.set("value", Json::number(r.value));
    j.set("witness", Json::string(r.witness.serialize()));
  } else if (what == "maxdistR" || what == "swR") {
    double g = need_gamma();
    j.set("gamma", Json::number(g));
    if (dist_given) {
      j.set("dist", Json::string(o.dist));
      FrontQuery r = what == "swR"
                         ? scost_complexity(f, mu, g, kind, o.budget)
                         : avg_complexity(f, mu, g, kind, o.budget);
      j.set("value", Json::number(r.value));
      j.set("witness", Json::string(r.witness.serialize()));
    } else {
      SolveConfig cfg{o.budget};
      cfg.seed = o.seed;
      OuterResult r = max_over_mu(f, g,
                                  what == "swR" ? OuterObjective::score_weighted
                                                : OuterObjective::avg_cost,
                                  kind, cfg);
      j.set("value", Json::number(r.value));
      j.set("certified", Json::boolean(r.certified));
      j.set("witness", Json::string(r.witness.serialize()));
    }
  } else {
    throw InputError("unknown measure '" + what + "'");
  }
  emit(j);
  return 0;
}

int cmd_verify(const std::string& suite, const RunConfig& cfg,
               const std::string& format) {
  std::vector<std::string> names;
  if (suite == "all")
    names = suite_names();
  else if (is_suite(suite))
    names = {suite};
  else
    throw InputError("unknown suite '" + suite + "'");
  std::vector<SuiteResult> results;
  bool all_ok = true;
  for (auto& name : names) {
    results.push_back(run_suite(name, cfg));
    all_ok = all_ok && results.back().ok();
  }
  if (format == "csv") {
    std::cout << "suite,cases,failures,worst_residual\n";
    for (auto& r : results)
      std::cout << r.name << ',' << r.cases << ',' << r.failures << ','
                << format_number(r.worst_residual) << "\n";
  } else {
    Json j = report_envelope("verify");
    j.set("seed", Json::integer((long long)cfg.seed));
    Json arr = Json::array();
    for (auto& r : results) arr.push(to_json(r));
    j.set("suites", std::move(arr));
    j.set("pass", Json::boolean(all_ok));
    emit(j);
  }
  return all_ok ? 0 : 4;
}

int cmd_sweep(const CommonOpts& o, const std::string& param, double from,
              double to, int points, bool logscale) {
  if (points < 1) throw InputError("--points must be positive");
  if (param != "alpha" && param != "gamma")
    throw InputError("--sweep must be alpha or gamma");
  if (from > to) throw InputError("empty grid: --from exceeds --to");
  if (logscale && from <= 0) throw InputError("log grid needs --from > 0");
  BoolFn f = resolve_function(o.fn);
  Dist mu = resolve_dist(o.dist, f);
  ScoreKind kind = parse_kind(o.score);
  double fixed_gamma = o.gamma.value_or(0.75);
  double fixed_alpha = o.alpha.value_or(1.0);

  std::cout << "param,DS,maxdistR,swR,lower_bound,upper_bound\n";
  std::optional<AlphaStar> cached_star;
  for (int i = 0; i < points; ++i) {
    double t = points > 1 ? double(i) / (points - 1) : 0.0;
    double v = logscale ? from * std::pow(to / from, t) : from + (to - from) * t;
    double a = param == "alpha" ? v : fixed_alpha;
    double g = param == "gamma" ? v : fixed_gamma;
    double ds =
        discounted_score(f, mu, a, kind, TieBreak::prefer_stop, o.budget).value;
    double avg = avg_complexity(f, mu, g, kind, o.budget).value;
    double sw = scost_complexity(f, mu, g, kind, o.budget).value;
    double lower = std::log(g / ds) / a;
    if (param == "gamma" || !cached_star)
      cached_star = find_alpha_star(f, mu, g, kind, o.budget);
    double upper = 0;
    if (!cached_star->degenerate)
      upper = 8 * std::numbers::ln2 *
              std::log(g / cached_star->ds) / cached_star->alpha;
    std::cout << format_number(v) << ',' << format_number(ds) << ','
              << format_number(avg) << ',' << format_number(sw) << ','
              << format_number(lower) << ',' << format_number(upper) << "\n";
  }
  return 0;
}

int cmd_construct(const CommonOpts& o, const std::string& kind_name,
                  double delta, double beta, const std::string& alg_text,
                  const std::string& tree_text) {
  BoolFn f = resolve_function(o.fn);
  Dist mu = resolve_dist(o.dist, f);
  ScoreKind kind = parse_kind(o.score);
  double gamma = o.gamma.value_or(0.75);
  ConstructionReport rep;
  if (kind_name == "boost") {
    rep = delta > 0 ? boost_to_delta(f, mu, gamma, delta, o.budget)
                    : schapire_boost(f, mu, gamma, o.budget);
  } else if (kind_name == "helcompose") {
    RandomizedAlg a = alg_text.empty()
                          ? RandomizedAlg(DecisionTree::leaf(f.bits()))
                          : RandomizedAlg::parse(read_text(alg_text), f.bits());
    rep = hellinger_compose(f, mu, a, beta, o.budget);
  } else if (kind_name == "truncate") {
    if (delta <= 0) throw InputError("truncate needs --delta > 0");
    RandomizedAlg a =
        alg_text.empty()
            ? avg_complexity(f, mu, gamma, kind, o.budget).witness
            : RandomizedAlg::parse(read_text(alg_text), f.bits());
    a.relabel_optimal(f, mu);
    a.label_unlabeled(0);
    rep = truncate_and_guess(a, f, mu, delta);
  } else if (kind_name == "seqproduct") {
    if (o.n < 2) throw InputError("seqproduct needs --n >= 2");
    if (delta <= 0) throw InputError("seqproduct needs --delta > 0");
    BoolFn fn = BoolFn::product(f, o.n);
    Dist mun = Dist::product(mu, o.n);
    rep = sequential_product(fn, mun, gamma, delta, o.budget);
  } else if (kind_name == "embed") {
    if (o.n < 2) throw InputError("embed needs --n >= 2");
    double alpha = o.alpha.value_or(1.0);
    BoolFn fn = BoolFn::product(f, o.n);
    Dist mun = Dist::product(mu, o.n);
    DecisionTree b =
        tree_text.empty()
            ? discounted_score(fn, mun, alpha, kind, TieBreak::prefer_stop,
                               o.budget)
                  .witness
            : DecisionTree::parse_sexpr(read_text(tree_text), fn.bits());
    rep = embed_simulate(b, f, mu, alpha, kind, o.budget);
  } else {
    throw InputError("unknown construction '" + kind_name + "'");
  }
  Json j = report_envelope("construct");
  j.set("construction", Json::string(kind_name));
  j.set("fn", Json::string(o.fn));
  j.set("dist", Json::string(o.dist));
  j.set("report", to_json(rep));
  emit(j);
  return rep.pass ? 0 : 4;
}

int cmd_demo(const CommonOpts& o, const std::string& name, double delta) {
  RunConfig cfg{o.seed, o.budget, 0, o.jobs, exact_mode()};
  DemoResult r;
  if (name == "parity")
    r = demo_parity(o.n, delta, cfg);
  else if (name == "mixture")
    r = demo_mixture(o.fn.empty() ? "id1" : o.fn, delta, cfg);
  else
    throw InputError("unknown demo '" + name + "'");
  emit(r.report);
  return r.pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale laboratory for randomized query complexity"};
  app.require_subcommand(1);

  CommonOpts mo;
  std::string measure_what;
  auto* measure = app.add_subcommand("measure", "compute one complexity value");
  add_common(measure, mo, true);
  measure->add_option("--measure", measure_what, "R|avgR|maxdistR|swR|DS")
      ->required();

  CommonOpts vo;
  std::string suite = "all";
  int trials = 0;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name or 'all'");
  verify->add_option("--seed", vo.seed);
  verify->add_option("--trials", trials, "override the suite's case count");
  verify->add_option("--jobs", vo.jobs);
  verify->add_option("--budget-states", vo.budget);
  verify->add_option("--format", vo.format)
      ->check(CLI::IsMember({"json", "csv"}));

  CommonOpts so;
  std::string sweep_param = "alpha";
  double sweep_from = 0.05, sweep_to = 4.0;
  int sweep_points = 16;
  bool sweep_log = false;
  auto* sweep = app.add_subcommand("sweep", "grid sweep as CSV");
  add_common(sweep, so, true);
  sweep->add_option("--sweep", sweep_param, "alpha|gamma");
  sweep->add_option("--from", sweep_from);
  sweep->add_option("--to", sweep_to);
  sweep->add_option("--points", sweep_points);
  sweep->add_flag("--log", sweep_log, "log-spaced grid");

  CommonOpts co;
  std::string construct_kind;
  double con_delta = 0, con_beta = 0.5;
  std::string alg_text, tree_text;
  auto* construct =
      app.add_subcommand("construct", "run a constructive transformation");
  construct
      ->add_option("kind", construct_kind,
                   "boost|helcompose|truncate|seqproduct|embed")
      ->required();
  add_common(construct, co, true);
  construct->add_option("--delta", con_delta);
  construct->add_option("--beta", con_beta);
  construct->add_option("--alg", alg_text, "mixture file or inline text");
  construct->add_option("--tree", tree_text, "tree s-expression or file");

  CommonOpts dopt;
  std::string demo_name;
  double demo_delta = 0.5;
  auto* demo = app.add_subcommand("demo", "run a showcase instance");
  demo->add_option("name", demo_name, "parity|mixture")->required();
  dopt.n = 2;
  dopt.fn = "";
  demo->add_option("--fn", dopt.fn);
  demo->add_option("--n", dopt.n);
  demo->add_option("--delta", demo_delta);
  demo->add_option("--seed", dopt.seed);
  demo->add_option("--budget-states", dopt.budget);

  try {
    app.parse(argc, argv);
    if (*measure)
      return cmd_measure(mo, measure_what, measure->count("--dist") > 0);
    if (*verify) {
      RunConfig cfg{vo.seed, vo.budget, trials, vo.jobs, exact_mode()};
      return cmd_verify(suite, cfg, vo.format);
    }
    if (*sweep)
      return cmd_sweep(so, sweep_param, sweep_from, sweep_to, sweep_points,
                       sweep_log);
    if (*construct)
      return cmd_construct(co, construct_kind, con_delta, con_beta, alg_text,
                           tree_text);
    if (*demo) return cmd_demo(dopt, demo_name, demo_delta);
    return 1;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const dqlab::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const dqlab::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const dqlab::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
