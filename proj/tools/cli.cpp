#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fairrank/error.hpp"
#include "fairrank/fixpoint.hpp"
#include "fairrank/optimize.hpp"
#include "fairrank/ranking.hpp"
#include "fairrank/render.hpp"
#include "fairrank/tournament.hpp"
#include "json.hpp"

namespace fairrank::cli {

namespace {

enum class Format { kText, kJson, kCsv };

// Raised for unreadable or unwritable paths; maps to exit code 3.
struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  Format format = Format::kText;
};

std::string read_input(Context& ctx, const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(ctx.in), {});
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoFailure("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(file), {});
}

void write_output(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoFailure("cannot write '" + path + "'");
  file << content;
  if (!file.flush()) throw IoFailure("write to '" + path + "' failed");
}

std::string fraction_text(const Rational& q) { return format_fraction_with_decimal(q); }

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIoError: return kIoError;
    case ErrorCode::kVerificationFailed:
    case ErrorCode::kNoConvergence: return kVerificationFailure;
    default: return kInputError;
  }
}

// gen -------------------------------------------------------------------

struct GenOptions {
  std::string family;
  std::size_t l = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out_path;
};

int run_gen(Context& ctx, const GenOptions& o) {
  Tournament t = [&] {
    if (o.family == "rotational") return rotational_tournament(o.l);
    if (o.family == "composite") return composite_tournament(o.l);
    return random_tournament(o.n, o.seed);
  }();
  const std::string text = serialize_tournament(t);
  std::ostream& summary = o.out_path.empty() ? ctx.err : ctx.out;
  if (o.out_path.empty()) {
    ctx.out << text;
  } else {
    write_output(o.out_path, text);
  }
  if (ctx.format == Format::kJson) {
    summary << nlohmann::json{{"n", t.size()}, {"edges", t.arc_count()}}.dump() << '\n';
  } else {
    summary << "n=" << t.size() << " edges=" << t.arc_count() << '\n';
  }
  return kOk;
}

// rank ------------------------------------------------------------------

struct RankOptions {
  std::string in_path;
  std::string method = "copeland";
  std::string out_path;
};

int run_rank(Context& ctx, const RankOptions& o) {
  const Tournament t = parse_tournament(read_input(ctx, o.in_path));
  std::optional<LinearFairResult> solved;
  Ranking ranking = [&] {
    if (o.method == "copeland") return copeland_ranking(t);
    solved = linear_fair_ranking(t);
    return solved->ranking;
  }();
  const BackwardReport bw = backward_arcs(t, ranking);
  if (!o.out_path.empty()) write_output(o.out_path, serialize_ranking(ranking));

  if (ctx.format == Format::kJson) {
    nlohmann::json j;
    j["method"] = o.method;
    j["backward"] = nlohmann::json::parse(to_json(bw));
    if (solved) j["solver"] = nlohmann::json::parse(to_json(*solved));
    if (o.out_path.empty()) {
      std::vector<std::string> values;
      for (Vertex x = 1; x <= ranking.size(); ++x) values.push_back(ranking.value_string(x));
      j["ranking"] = values;
    }
    ctx.out << j.dump() << '\n';
    return kOk;
  }
  if (ctx.format == Format::kCsv) {
    ctx.out << "vertex,rank\n";
    for (Vertex x = 1; x <= ranking.size(); ++x) ctx.out << x << ',' << ranking.value_string(x) << '\n';
    return kOk;
  }
  if (o.out_path.empty()) ctx.out << serialize_ranking(ranking);
  ctx.out << "method=" << o.method << " bw=" << fraction_text(bw.fraction) << '\n';
  if (solved) {
    for (std::size_t i = 0; i < solved->components.size(); ++i) {
      const auto& c = solved->components[i];
      ctx.out << "component " << i + 1 << " size=" << c.vertices.size();
      if (c.vertices.size() > 1) {
        char buf[96];
        std::snprintf(buf, sizeof buf, " lambda=%.12g residual=%.3g iterations=%zu",
                      c.eigenvalue, c.residual, c.iterations);
        ctx.out << buf;
      }
      ctx.out << '\n';
    }
    ctx.out << "verified=" << (solved->verified ? "true" : "false")
            << " escalations=" << solved->escalations << '\n';
  }
  return kOk;
}

// check -----------------------------------------------------------------

struct CheckOptions {
  std::string in_path;
  std::string ranking_path;
  std::string fairness;
};

int run_check(Context& ctx, const CheckOptions& o, FairnessClass c) {
  const Tournament t = parse_tournament(read_input(ctx, o.in_path));
  const Ranking r = parse_ranking(read_input(ctx, o.ranking_path));
  const FairnessVerdict verdict = is_fair(t, r, c);
  const BackwardReport bw = backward_arcs(t, r);
  if (ctx.format == Format::kJson) {
    nlohmann::json j;
    j["class"] = std::string(to_string(c));
    j["verdict"] = verdict.fair ? "PASS" : "FAIL";
    if (verdict.violation) {
      j["violation"] = {{"x", verdict.violation->x},
                        {"y", verdict.violation->y},
                        {"rule", verdict.violation->rule}};
    }
    j["backward"] = nlohmann::json::parse(to_json(bw));
    ctx.out << j.dump() << '\n';
  } else {
    ctx.out << (verdict.fair ? "PASS" : "FAIL") << ' ' << to_string(c) << '\n';
    if (verdict.violation) {
      ctx.out << "violation (" << verdict.violation->x << "," << verdict.violation->y
              << "): " << verdict.violation->rule << '\n';
    }
    ctx.out << "bw=" << fraction_text(bw.fraction) << '\n';
  }
  return verdict.fair ? kOk : kFailVerdict;
}

// minimize --------------------------------------------------------------

struct MinimizeOptions {
  std::string in_path;
  std::string space = "injective";
  std::string fairness = "inj";
};

int run_minimize(Context& ctx, const MinimizeOptions& o, FairnessClass c) {
  const Tournament t = parse_tournament(read_input(ctx, o.in_path));
  const MinBackwardResult result =
      o.space == "injective" ? min_backward_injective(t) : min_backward_fair(t, c);
  if (ctx.format == Format::kJson) {
    auto j = nlohmann::json::parse(to_json(result));
    j["class"] = o.space == "injective" ? "Inj" : std::string(to_string(c));
    ctx.out << j.dump() << '\n';
    return kOk;
  }
  if (ctx.format == Format::kCsv) {
    ctx.out << "count,fraction_num,fraction_den,search_space\n"
            << result.count << ',' << numerator_of(result.fraction) << ','
            << denominator_of(result.fraction) << ',' << to_string(result.search_space) << '\n';
    return kOk;
  }
  ctx.out << "count=" << result.count << " fraction=" << fraction_text(result.fraction)
          << " space=" << to_string(result.search_space) << '\n';
  if (result.lower_bound_candidate) {
    ctx.out << "note: Lin searched over integer level values only; lower-bound candidate\n";
  }
  ctx.out << "witness:\n" << serialize_ranking(result.witness);
  return kOk;
}

// emn -------------------------------------------------------------------

struct EmnOptions {
  std::string family = "composite";
  std::uint64_t l_max = 0;
  std::uint64_t materialize = 0;
  std::size_t exhaustive = 0;
  std::size_t jobs = 1;
};

int run_emn_exhaustive(Context& ctx, std::size_t n) {
  const BoundCheckReport report = verify_copeland_upper_bound(n, SampleMode::kExhaustive);
  if (ctx.format == Format::kJson) {
    ctx.out << to_json(report) << '\n';
  } else if (ctx.format == Format::kCsv) {
    ctx.out << "n,tested,max_num,max_den,bound_num,bound_den,violations\n"
            << report.n << ',' << report.tested << ',' << numerator_of(report.max_fraction) << ','
            << denominator_of(report.max_fraction) << ',' << numerator_of(report.bound) << ','
            << denominator_of(report.bound) << ',' << report.violations << '\n';
  } else {
    ctx.out << "n=" << report.n << " tournaments=" << report.tested
            << " max_fraction=" << fraction_text(report.max_fraction)
            << " bound=" << fraction_text(report.bound) << " violations=" << report.violations
            << '\n';
    if (report.witness) ctx.out << "witness:\n" << serialize_tournament(*report.witness);
  }
  return report.holds() ? kOk : kVerificationFailure;
}

int run_emn(Context& ctx, const EmnOptions& o) {
  if (o.exhaustive > 0) return run_emn_exhaustive(ctx, o.exhaustive);
  const EmnReport report = emn_sweep_composite(o.l_max, o.materialize, o.jobs);
  if (ctx.format == Format::kJson) {
    ctx.out << to_json(report) << '\n';
  } else if (ctx.format == Format::kCsv) {
    ctx.out << to_csv(report);
  } else {
    ctx.out << "family=" << report.family << " limit=" << format_rational(report.limit) << '\n';
    for (const auto& row : report.rows) {
      ctx.out << "l=" << row.l << " n=" << row.n << " edges=" << row.edges
              << " min_backward=" << row.min_backward << " fraction=" << fraction_text(row.fraction)
              << " bound=" << format_rational(row.bound)
              << (row.materialized ? " [materialized]" : "") << '\n';
    }
    ctx.out << "strictly_increasing=" << (report.strictly_increasing ? "true" : "false")
            << " all_below_limit=" << (report.all_below_limit ? "true" : "false") << '\n';
  }
  return report.strictly_increasing && report.all_below_limit ? kOk : kVerificationFailure;
}

// dump ------------------------------------------------------------------

struct DumpOptions {
  std::string in_path;
  std::string ranking_path;
  bool table = true;
};

int run_dump(Context& ctx, const DumpOptions& o) {
  const Tournament t = parse_tournament(read_input(ctx, o.in_path));
  std::optional<Ranking> r;
  if (!o.ranking_path.empty()) r = parse_ranking(read_input(ctx, o.ranking_path));
  ctx.out << render_table(t, r);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Tournament rankings under fairness axioms"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a tournament");
  gen_cmd->add_option("--family", gen.family)
      ->required()
      ->check(CLI::IsMember({"rotational", "composite", "random"}));
  auto* gen_l = gen_cmd->add_option("--l", gen.l, "Family parameter l")->check(CLI::PositiveNumber);
  auto* gen_n = gen_cmd->add_option("--n", gen.n, "Vertex count (random)")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out,-o", gen.out_path);

  RankOptions rank;
  auto* rank_cmd = app.add_subcommand("rank", "Rank a tournament");
  rank_cmd->add_option("in", rank.in_path, "Tournament file or -")->required();
  rank_cmd->add_option("--method", rank.method)
      ->check(CLI::IsMember({"copeland", "linear-fair"}));
  rank_cmd->add_option("--out,-o", rank.out_path);

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Check a ranking against a fairness class");
  check_cmd->add_option("in", check.in_path)->required();
  check_cmd->add_option("ranking", check.ranking_path)->required();
  check_cmd->add_option("--class", check.fairness)->required();

  MinimizeOptions minimize;
  auto* min_cmd = app.add_subcommand("minimize", "Minimise backward arcs");
  min_cmd->add_option("in", minimize.in_path)->required();
  min_cmd->add_option("--space", minimize.space)
      ->check(CLI::IsMember({"injective", "weak-orders"}));
  min_cmd->add_option("--class", minimize.fairness);

  EmnOptions emn;
  auto* emn_cmd = app.add_subcommand("emn", "Composite-family sweep or exhaustive bound check");
  emn_cmd->add_option("--family", emn.family)->check(CLI::IsMember({"composite"}));
  auto* emn_lmax = emn_cmd->add_option("--lmax", emn.l_max)->check(CLI::PositiveNumber);
  emn_cmd->add_option("--materialize", emn.materialize);
  auto* emn_exh = emn_cmd->add_option("--exhaustive", emn.exhaustive)->check(CLI::Range(2, 5));
  emn_cmd->add_option("--jobs", emn.jobs)->check(CLI::PositiveNumber);
  emn_lmax->excludes(emn_exh);

  DumpOptions dump;
  auto* dump_cmd = app.add_subcommand("dump", "ASCII adjacency table");
  dump_cmd->add_option("in", dump.in_path)->required();
  dump_cmd->add_flag("--table", dump.table);
  dump_cmd->add_option("--ranking", dump.ranking_path);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  Context ctx{in, out, err};
  ctx.format = format == "json" ? Format::kJson : format == "csv" ? Format::kCsv : Format::kText;

  try {
    if (*gen_cmd) {
      if (gen.family == "random" ? gen_n->count() == 0 : gen_l->count() == 0) {
        err << "error: --family " << gen.family << " needs " << (gen.family == "random" ? "--n" : "--l")
            << '\n';
        return kInputError;
      }
      return run_gen(ctx, gen);
    }
    if (*rank_cmd) return run_rank(ctx, rank);
    if (*check_cmd) {
      const auto c = parse_fairness_class(check.fairness);
      if (!c) {
        err << "error: unknown class '" << check.fairness << "'\n";
        return kInputError;
      }
      return run_check(ctx, check, *c);
    }
    if (*min_cmd) {
      const auto c = parse_fairness_class(minimize.fairness);
      if (!c) {
        err << "error: unknown class '" << minimize.fairness << "'\n";
        return kInputError;
      }
      return run_minimize(ctx, minimize, *c);
    }
    if (*emn_cmd) {
      if (emn.exhaustive == 0 && emn.l_max == 0) {
        err << "error: emn needs --lmax or --exhaustive\n";
        return kInputError;
      }
      return run_emn(ctx, emn);
    }
    if (*dump_cmd) return run_dump(ctx, dump);
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_for(e.code());
  }
  return kInputError;
}

}  // namespace fairrank::cli
