#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fatplanes/bounds.hpp"
#include "fatplanes/combinatorics.hpp"
#include "fatplanes/experiments.hpp"
#include "fatplanes/fat_algebra.hpp"
#include "fatplanes/fp_matrix.hpp"
#include "fatplanes/rng.hpp"

using nlohmann::ordered_json;
using namespace fatplanes;

namespace {

ordered_json bigint_json(const Bigint& v) {
  if (v >= std::numeric_limits<long long>::min() &&
      v <= std::numeric_limits<long long>::max())
    return static_cast<long long>(v);
  return v.str();
}

std::string joined(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += " ";
    out += p;
  }
  return out.empty() ? "(none)" : out;
}

ordered_json bound_json(const BoundReport& rep) {
  ordered_json j;
  j["r"] = rep.r;
  j["dd"] = rep.dd.degrees();
  j["conjecture_n"] = bigint_json(rep.conjecture_n);
  j["elv_n"] = bigint_json(rep.elv_n);
  j["elv_flagged"] = rep.elv_flagged;
  j["small_step_n"] = bigint_json(rep.small_step_n);
  j["best_n"] = rep.best_n ? bigint_json(*rep.best_n) : ordered_json(nullptr);
  j["strategy"] = rep.strategy;
  j["hypothesis_flags"] = rep.hypothesis_flags;
  j["conjectural"] = rep.conjectural;
  ordered_json strategies = ordered_json::array();
  for (const auto& s : rep.strategies) {
    ordered_json js;
    js["small_steps"] = s.small_steps;
    js["steps"] = s.steps;
    ordered_json vals = ordered_json::array();
    for (const auto& v : s.step_values) vals.push_back(bigint_json(v));
    js["step_values"] = std::move(vals);
    js["value"] = bigint_json(s.value);
    js["admissible"] = s.admissible();
    js["blocking"] = s.blocking;
    strategies.push_back(std::move(js));
  }
  j["strategies"] = std::move(strategies);
  return j;
}

void print_bound_table(const BoundReport& rep) {
  std::cout << "bounds for r = " << rep.r << ", degrees = "
            << rep.dd.to_string() << (rep.conjectural ? " (conjectural mode)" : "")
            << "\n";
  std::cout << "  conjecture_n : " << rep.conjecture_n << "\n";
  std::cout << "  elv_n        : " << rep.elv_n
            << (rep.elv_flagged ? "  [degree-2 caveat]" : "") << "\n";
  std::cout << "  small_step_n : " << rep.small_step_n << "\n";
  std::cout << "  best_n       : ";
  if (rep.best_n)
    std::cout << *rep.best_n << "  via " << joined(rep.strategy) << "\n";
  else
    std::cout << "none (no admissible strategy)\n";
  std::cout << "  flags        : " << joined(rep.hypothesis_flags) << "\n";
  std::cout << "  strategies:\n";
  for (const auto& s : rep.strategies) {
    std::cout << "    k=" << s.small_steps << " [" << joined(s.steps)
              << "] value=" << s.value;
    if (s.admissible())
      std::cout << "  admissible\n";
    else
      std::cout << "  blocked: " << joined(s.blocking) << "\n";
  }
}

void print_experiment_table(const ExperimentReport& rep) {
  std::cout << "experiment : " << rep.name << "\n";
  std::cout << "verdict    : " << verdict_name(rep.verdict) << "\n";
  std::cout << "trials     : " << rep.trials << "\n";
  std::cout << "successes  : " << rep.successes << "\n";
  std::cout << "seed       : " << rep.seed << "\n";
  for (const auto& [k, v] : rep.params)
    std::cout << "  " << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump())
              << "\n";
  std::cout << "detail     : " << rep.detail << "\n";
  if (rep.witness)
    std::cout << "witness    : " << rep.witness->dump() << "\n";
}

int finish_experiment(const ExperimentReport& rep, const std::string& format) {
  if (format == "json")
    std::cout << rep.to_json().dump(2) << "\n";
  else
    print_experiment_table(rep);
  return rep.failed() ? 1 : 0;
}

struct TangentSystemArgs {
  std::string system_file;
  std::string dump_file;
};

// single-system variant of the tangent experiment, for stored test vectors
ExperimentReport tangent_on_system(const PolySystem& b, int r, int t) {
  FatShape shape(b.n, r, t);
  std::vector<int> degs;
  for (const auto& eq : b.equations) degs.push_back(eq.degree);
  Multidegree dd(degs);
  RhoBreakdown rho = rho_expected(b.n, r, t, dd);
  size_t rank = mat_rank(normal_map_matrix(b, shape));

  ExperimentReport rep;
  rep.name = "tangent";
  rep.trials = 1;
  rep.add_param("n", b.n);
  rep.add_param("r", r);
  rep.add_param("t", t);
  rep.add_param("dd", dd.to_string());
  rep.add_param("p", b.field.modulus());
  rep.add_param("rho", bigint_json(rho.rho));
  rep.add_param("c", bigint_json(rho.c));
  rep.add_param("max_rank", static_cast<long long>(rank));
  rep.add_param("min_rank", static_cast<long long>(rank));
  const bool exception_case =
      (b.n == 3 && r == 1 && t == 2 && degs == std::vector<int>{2});
  const bool restrictions_ok = t == dd.max() && dd.max_is_unique() && t >= 3;
  if (exception_case) {
    rep.successes = Bigint(rank) < rho.c ? 1 : 0;
    rep.verdict = rep.successes ? Verdict::Pass : Verdict::Fail;
    rep.detail = "known exception: the normal map must stay below full rank";
  } else if (rho.rho >= 0 && restrictions_ok) {
    rep.successes = Bigint(rank) == rho.c ? 1 : 0;
    rep.verdict = rep.successes ? Verdict::Pass : Verdict::Info;
    rep.detail = rep.successes
                     ? "normal map reached the full condition count"
                     : "single system below full rank; rerun the sampled experiment";
  } else {
    rep.successes = Bigint(rank) == rho.c ? 1 : 0;
    rep.verdict = Verdict::Info;
    rep.detail = "rank reported for the stored system";
  }
  return rep;
}

int run_report_examples(int r, const std::string& dstr,
                        const std::string& format) {
  Multidegree dd = Multidegree::parse(dstr);
  if (dd.size() != 2)
    throw std::invalid_argument(
        "report: the closed-form row needs exactly two degrees");
  ordered_json rows = ordered_json::array();
  bool all_ok = true;

  {
    BoundReport rep = best_bound(5, Multidegree({20, 30}));
    bool ok = rep.elv_n == 1800260 && rep.best_n && *rep.best_n <= 370000;
    ordered_json row;
    row["name"] = "large-degree pair, r=5, degrees (20,30)";
    row["paper_claim"] =
        "single big step needs n >= 1,800,000; the best recursive strategy "
        "reaches n >= 370,000";
    row["computed"] = ordered_json{{"conjecture_n", bigint_json(rep.conjecture_n)},
                                   {"elv_n", bigint_json(rep.elv_n)},
                                   {"small_step_n", bigint_json(rep.small_step_n)},
                                   {"best_n", bigint_json(*rep.best_n)},
                                   {"strategy", rep.strategy}};
    row["consistent"] = ok;
    rows.push_back(std::move(row));
    all_ok = all_ok && ok;
  }
  {
    BoundReport rep = best_bound(1, Multidegree({3}));
    bool ok = rep.conjecture_n == 6 && rep.elv_n == 6 &&
              rep.small_step_n == 6 && rep.best_n && *rep.best_n == 6;
    ordered_json row;
    row["name"] = "cubic hypersurface, r=1, degree (3)";
    row["paper_claim"] = "sharp threshold n >= 6 for 1-cycles on cubics";
    row["computed"] = ordered_json{{"conjecture_n", bigint_json(rep.conjecture_n)},
                                   {"elv_n", bigint_json(rep.elv_n)},
                                   {"small_step_n", bigint_json(rep.small_step_n)},
                                   {"best_n", bigint_json(*rep.best_n)}};
    row["consistent"] = ok;
    rows.push_back(std::move(row));
    all_ok = all_ok && ok;
  }
  {
    int d1 = dd[0], d2 = dd[1];
    Bigint term1 = ceil_div(binomial(d1 + r + 1, r + 1) +
                                binomial(d2 + r + 1, r + 1) + Bigint(r) * r +
                                r - 2,
                            Bigint(r + 1));
    Bigint small_direct = small_step_min_n(r, dd).min_n;
    Bigint term2_published = ceil_div(
        binomial(d1 + r + 2, r + 2) + Bigint(r) * r + 3 * r, Bigint(r + 2));
    Bigint term2_derived = small_step_min_n(r + 1, Multidegree({d1})).min_n;
    Bigint published = std::max(term1, term2_published);
    Bigint derived = std::max(term1, term2_derived);
    Bigint diff = term2_derived - term2_published;
    bool ok = term1 == small_direct && diff >= 0 && diff <= 1;
    std::string note =
        term2_published == term2_derived
            ? ""
            : "second terms differ by one: the published numerator is r^2+3r, "
              "the engine's recursion gives r^2+3r+1";
    ordered_json row;
    row["name"] = "two-hypersurface closed form at r=" + std::to_string(r) +
                  ", degrees " + dd.to_string();
    row["paper_claim"] =
        "threshold max(ceil((C(d1+r+1,r+1)+C(d2+r+1,r+1)+r^2+r-2)/(r+1)), "
        "ceil((C(d1+r+2,r+2)+r^2+3r)/(r+2)))";
    row["computed"] =
        ordered_json{{"first_term", bigint_json(term1)},
                     {"small_step_n", bigint_json(small_direct)},
                     {"second_term_published", bigint_json(term2_published)},
                     {"second_term_engine", bigint_json(term2_derived)},
                     {"published_value", bigint_json(published)},
                     {"engine_value", bigint_json(derived)}};
    row["consistent"] = ok;
    row["note"] = note;
    rows.push_back(std::move(row));
    all_ok = all_ok && ok;
  }

  if (format == "json") {
    ordered_json doc;
    doc["report"] = "paper-examples";
    doc["rows"] = std::move(rows);
    doc["consistent"] = all_ok;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "reference-value report\n";
    for (const auto& row : rows) {
      std::cout << "row: " << row.at("name").get<std::string>() << "\n";
      std::cout << "  claim    : " << row.at("paper_claim").get<std::string>()
                << "\n";
      std::cout << "  computed : " << row.at("computed").dump() << "\n";
      std::cout << "  status   : "
                << (row.at("consistent").get<bool>() ? "consistent"
                                                     : "DISCREPANT")
                << "\n";
      if (row.contains("note") && !row.at("note").get<std::string>().empty())
        std::cout << "  note     : " << row.at("note").get<std::string>()
                  << "\n";
    }
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact bounds and finite-field experiments for fat planes in "
               "complete intersections"};
  app.require_subcommand(1);

  std::string format = "table";
  std::uint64_t p_value = 32003;
  std::uint64_t seed = 42;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"table", "json"}));
  auto* p_opt = app.add_option("--p", p_value, "field characteristic")
                    ->envname("FATPLANE_P");
  app.add_option("--seed", seed, "master seed for sampled experiments")
      ->envname("FATPLANE_SEED");

  int exit_code = 0;

  // bound
  auto* bound = app.add_subcommand("bound", "closed-form triviality bounds");
  bound->fallthrough();
  int bound_r = 0;
  std::string bound_d;
  bool conjectural = false;
  bound->add_option("-r", bound_r, "cycle dimension")->required();
  bound->add_option("-d", bound_d, "multidegree, comma separated")->required();
  bound->add_flag("--conjectural", conjectural,
                  "admit big steps with the degree-2 caveat");
  bound->callback([&] {
    BoundReport rep = best_bound(bound_r, Multidegree::parse(bound_d),
                                 conjectural);
    if (format == "json")
      std::cout << bound_json(rep).dump(2) << "\n";
    else
      print_bound_table(rep);
  });

  // rho
  auto* rho_cmd = app.add_subcommand("rho", "expected dimension breakdown");
  rho_cmd->fallthrough();
  int rho_n = 0, rho_r = 0, rho_t = 0;
  std::string rho_d;
  rho_cmd->add_option("-n", rho_n)->required();
  rho_cmd->add_option("-r", rho_r)->required();
  rho_cmd->add_option("-t", rho_t)->required();
  rho_cmd->add_option("-d", rho_d)->required();
  rho_cmd->callback([&] {
    RhoBreakdown rb = rho_expected(rho_n, rho_r, rho_t,
                                   Multidegree::parse(rho_d));
    if (format == "json") {
      ordered_json j;
      j["rho"] = bigint_json(rb.rho);
      j["flag_dim"] = bigint_json(rb.flag_dim);
      j["c"] = bigint_json(rb.c);
      ordered_json per = ordered_json::array();
      for (const auto& v : rb.c_per_degree) per.push_back(bigint_json(v));
      j["c_per_degree"] = std::move(per);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "rho          : " << rb.rho << "\n";
      std::cout << "flag_dim     : " << rb.flag_dim << "\n";
      std::cout << "c            : " << rb.c << "\n";
      std::cout << "c_per_degree :";
      for (const auto& v : rb.c_per_degree) std::cout << " " << v;
      std::cout << "\n";
    }
  });

  // verify
  auto* verify = app.add_subcommand("verify", "finite-field experiments");
  verify->require_subcommand(1);
  verify->fallthrough();

  auto* codim = verify->add_subcommand("codim", "restriction rank and kernel");
  codim->fallthrough();
  int cd_n = 0, cd_r = 0, cd_t = 0, cd_d = 0;
  codim->add_option("-n", cd_n)->required();
  codim->add_option("-r", cd_r)->required();
  codim->add_option("-t", cd_t)->required();
  codim->add_option("-d", cd_d)->required();
  codim->callback([&] {
    exit_code = finish_experiment(
        verify_codim(cd_n, cd_r, cd_t, cd_d, PrimeField(p_value)), format);
  });

  auto* maxrank = verify->add_subcommand("maxrank",
                                         "general-morphism maximal rank");
  maxrank->fallthrough();
  int mr_r = 0, mr_t = 0, mr_pcount = 0, mr_trials = 20;
  std::string mr_d;
  bool mr_info = false;
  maxrank->add_option("-r", mr_r)->required();
  maxrank->add_option("-t", mr_t)->required();
  maxrank->add_option("-d", mr_d)->required();
  maxrank->add_option("--p-count", mr_pcount)->required();
  maxrank->add_option("--trials", mr_trials);
  maxrank->add_flag("--informational", mr_info,
                    "run outside the supported restrictions");
  maxrank->callback([&] {
    exit_code = finish_experiment(
        maxrank_mc(mr_r, mr_t, Multidegree::parse(mr_d), mr_pcount,
                   PrimeField(p_value), mr_trials, seed, mr_info),
        format);
  });

  auto* tangent = verify->add_subcommand("tangent",
                                         "normal-map rank on random systems");
  tangent->fallthrough();
  int tg_n = 0, tg_r = 0, tg_t = 0, tg_trials = 20;
  std::string tg_d;
  TangentSystemArgs tg_files;
  tangent->add_option("-n", tg_n);
  tangent->add_option("-r", tg_r)->required();
  tangent->add_option("-t", tg_t)->required();
  tangent->add_option("-d", tg_d);
  tangent->add_option("--trials", tg_trials);
  tangent->add_option("--system", tg_files.system_file,
                      "verify a stored system instead of sampling");
  tangent->add_option("--dump-system", tg_files.dump_file,
                      "write the first sampled system to this file");
  tangent->callback([&] {
    if (!tg_files.system_file.empty()) {
      std::ifstream in(tg_files.system_file);
      if (!in) throw std::invalid_argument("tangent: cannot open system file");
      ordered_json j = ordered_json::parse(in);
      exit_code =
          finish_experiment(tangent_on_system(PolySystem::from_json(j), tg_r, tg_t),
                            format);
      return;
    }
    if (tg_n == 0 || tg_d.empty())
      throw std::invalid_argument("tangent: needs -n and -d (or --system)");
    Multidegree dd = Multidegree::parse(tg_d);
    PrimeField f(p_value);
    if (!tg_files.dump_file.empty()) {
      PolySystem b =
          sample_ideal_element(FatShape(tg_n, tg_r, tg_t), dd, f,
                               child_seed(seed, 0));
      std::ofstream out(tg_files.dump_file);
      if (!out) throw std::invalid_argument("tangent: cannot write system file");
      out << b.to_json().dump(2) << "\n";
    }
    exit_code = finish_experiment(
        tangent_rank_mc(tg_n, tg_r, tg_t, dd, f, tg_trials, seed), format);
  });

  auto* lastineg = verify->add_subcommand("lastineg",
                                          "rank-count inequality chain");
  lastineg->fallthrough();
  int li_r = 0;
  long long li_pcount = 0;
  std::string li_d;
  lastineg->add_option("-r", li_r)->required();
  lastineg->add_option("-d", li_d)->required();
  lastineg->add_option("--p-count", li_pcount)->required();
  lastineg->callback([&] {
    exit_code = finish_experiment(
        lastineg_check(li_r, Multidegree::parse(li_d), li_pcount), format);
  });

  auto* quadric = verify->add_subcommand("quadric",
                                         "double line in a quadric exception");
  quadric->fallthrough();
  int qd_trials = 100;
  quadric->add_option("--trials", qd_trials);
  quadric->callback([&] {
    exit_code = finish_experiment(
        quadric_exception(PrimeField(p_value), qd_trials, seed), format);
  });

  auto* rhoprime = verify->add_subcommand("rhoprime",
                                          "three-way expected-dimension identity");
  rhoprime->fallthrough();
  int rp_n = 0, rp_r = 0;
  std::string rp_d;
  rhoprime->add_option("-n", rp_n)->required();
  rhoprime->add_option("-r", rp_r)->required();
  rhoprime->add_option("-d", rp_d)->required();
  rhoprime->callback([&] {
    exit_code = finish_experiment(
        rho_prime_identity(rp_n, rp_r, Multidegree::parse(rp_d)), format);
  });

  auto* fatpoint = verify->add_subcommand("fatpoint",
                                          "fat-point witness search");
  fatpoint->fallthrough();
  int fpn = 0, fp_ext = 2;
  std::string fp_d;
  fatpoint->add_option("-n", fpn)->required();
  fatpoint->add_option("-d", fp_d)->required();
  fatpoint->add_option("--max-extension", fp_ext)->check(CLI::Range(1, 2));
  fatpoint->callback([&] {
    // small field by default so the direction sweep stays enumerable
    std::uint64_t p = p_opt->count() > 0 ? p_value : 7;
    FatPointOptions opts;
    opts.max_extension = fp_ext;
    exit_code = finish_experiment(
        fat_point_search(fpn, Multidegree::parse(fp_d), PrimeField(p), seed,
                         opts),
        format);
  });

  // report
  auto* report = app.add_subcommand("report", "fixed comparison reports");
  report->require_subcommand(1);
  report->fallthrough();
  auto* examples = report->add_subcommand(
      "paper-examples", "computed bounds vs published claims");
  examples->fallthrough();
  int rep_r = 5;
  std::string rep_d = "20,30";
  examples->add_option("-r", rep_r);
  examples->add_option("-d", rep_d);
  examples->callback(
      [&] { exit_code = run_report_examples(rep_r, rep_d, format); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
