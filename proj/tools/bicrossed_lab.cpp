// Batch driver and command line front end for the bicrossed product lab.
// Every subcommand prints a JSON document to stdout (or --out) and exits
// nonzero on failed checks or usage errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bicrossed/axb.hpp"
#include "bicrossed/pentagonal.hpp"
#include "bicrossed/ring.hpp"
#include "bicrossed/scenario.hpp"
#include "bicrossed/unitary.hpp"

namespace {

using bicrossed::Json;

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream os(out_path);
    os << j.dump(2) << "\n";
  }
}

nlohmann::json parse_json_arg(const std::string& text) {
  // accept inline JSON or a ring/map alias string
  if (!text.empty() && (text[0] == '{' || text[0] == '[')) return nlohmann::json::parse(text);
  return nlohmann::json(text);
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) bicrossed::fail(bicrossed::ErrorCode::ParseError, "cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    bicrossed::fail(bicrossed::ErrorCode::ParseError,
                    path + ": " + e.what());  // position-annotated by the parser
  }
  return j;
}

// tiny expression grammar for `padic eval`:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := rational | '(' expr ')' | 'inv' '(' expr ')' | '-' factor
struct PadicEval {
  std::int64_t p;
  int precision;
  std::string s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  bicrossed::PAdicNumber expr() {
    auto v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }
  bicrossed::PAdicNumber term() {
    auto v = factor();
    for (;;) {
      if (eat('*'))
        v = v * factor();
      else if (eat('/'))
        v = v / factor();
      else
        return v;
    }
  }
  bicrossed::PAdicNumber factor() {
    skip();
    if (eat('-')) return -factor();
    if (s.compare(i, 3, "inv") == 0) {
      i += 3;
      if (!eat('(')) bicrossed::fail(bicrossed::ErrorCode::ParseError, "expected ( after inv");
      auto v = expr();
      if (!eat(')')) bicrossed::fail(bicrossed::ErrorCode::ParseError, "expected )");
      return v.inverse();
    }
    if (eat('(')) {
      auto v = expr();
      if (!eat(')')) bicrossed::fail(bicrossed::ErrorCode::ParseError, "expected )");
      return v;
    }
    return number();
  }
  bicrossed::PAdicNumber number() {
    skip();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i)
      bicrossed::fail(bicrossed::ErrorCode::ParseError,
                      "expected a number at position " + std::to_string(start));
    bicrossed::Int num(s.substr(start, i - start));
    bicrossed::Int den(1);
    skip();
    if (i < s.size() && s[i] == '/') {
      // lookahead: only treat as a literal fraction when digits follow
      std::size_t save = i;
      ++i;
      skip();
      std::size_t dstart = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (dstart == i) {
        i = save;  // it was the division operator
      } else {
        den = bicrossed::Int(s.substr(dstart, i - dstart));
      }
    }
    return bicrossed::PAdicNumber::from_rational(p, bicrossed::Rat(num, den), precision);
  }
};

int run_all(int argc, char** argv) {
  CLI::App app{"bicrossed product verification lab"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "write the JSON report to a file instead of stdout");

  // run <scenario.json>
  auto* cmd_run = app.add_subcommand("run", "execute a scenario file");
  std::string scenario_path;
  bool no_timestamp = false;
  cmd_run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  cmd_run->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");

  // pentagon verify <map>
  auto* cmd_pentagon = app.add_subcommand("pentagon", "pentagonal transformation checks");
  auto* cmd_pent_verify = cmd_pentagon->add_subcommand("verify", "exact pentagon identity");
  std::string map_name = "axb_real";
  long pent_samples = 1000;
  std::uint64_t pent_seed = 1;
  std::string map_file;
  cmd_pent_verify->add_option("map", map_name, "built-in map name")->required();
  cmd_pent_verify->add_option("--samples", pent_samples, "number of sampled triples");
  cmd_pent_verify->add_option("--seed", pent_seed, "sampling seed");
  cmd_pent_verify->add_option("--from-json", map_file, "load the map from a JSON file instead");

  // bicrossed report <pair>
  auto* cmd_bic = app.add_subcommand("bicrossed", "bicrossed product diagnostics");
  auto* cmd_bic_report = cmd_bic->add_subcommand("report", "pentagon, spans and verdict");
  std::string pair_name = "S3";
  std::string dump_w_path;
  cmd_bic_report->add_option("pair", pair_name, "built-in pair name")->required();
  cmd_bic_report->add_option("--dump-w", dump_w_path,
                             "write W as sparse (row, col, numerator, denominator) quadruples");

  // adele density / witness
  auto* cmd_adele = app.add_subcommand("adele", "restricted product checks");
  auto* cmd_density = cmd_adele->add_subcommand("density", "Monte Carlo unit density");
  std::string pool_spec = "{\"kind\":\"AllPrimesResidueDegree2\"}";
  std::int64_t truncation = 25, density_samples = 100000;
  std::uint64_t density_seed = 7;
  int density_shards = 1;
  cmd_density->add_option("pool", pool_spec, "pool JSON")->required();
  cmd_density->add_option("--truncation", truncation, "number of initial pool primes");
  cmd_density->add_option("--samples", density_samples, "Monte Carlo sample count");
  cmd_density->add_option("--seed", density_seed, "sampling seed");
  cmd_density->add_option("--shards", density_shards, "deterministic sampling shards");

  auto* cmd_witness = cmd_adele->add_subcommand("witness", "non-unit inside a basic neighborhood");
  std::string witness_pool = "{\"kind\":\"AllPrimesResidueDegree2\"}";
  std::string constraint_csv;
  cmd_witness->add_option("pool", witness_pool, "pool JSON")->required();
  cmd_witness->add_option("--constraint", constraint_csv, "comma separated constrained primes");

  // axb factor <ring-json> <a> <x>
  auto* cmd_axb = app.add_subcommand("axb", "ax+b group over a ring");
  auto* cmd_factor = cmd_axb->add_subcommand("factor", "factor (a, x) through G1 G2");
  std::string ring_spec, a_text, x_text;
  cmd_factor->add_option("ring", ring_spec, "ring descriptor JSON or alias")->required();
  cmd_factor->add_option("a", a_text, "unit slot, a rational")->required();
  cmd_factor->add_option("x", x_text, "translation slot, a rational")->required();

  // padic eval <expr>
  auto* cmd_padic = app.add_subcommand("padic", "p-adic arithmetic");
  auto* cmd_eval = cmd_padic->add_subcommand("eval", "evaluate an expression");
  std::string expr_text;
  std::int64_t eval_prime = 5;
  int eval_precision = bicrossed::PAdicNumber::kDefaultPrecision;
  cmd_eval->add_option("expr", expr_text, "arithmetic over Q_p, e.g. '1/2 + inv(3)'")->required();
  cmd_eval->add_option("--prime", eval_prime, "the prime p");
  cmd_eval->add_option("--precision", eval_precision, "tracked digits");

  // ring bq-check <base> <q>
  auto* cmd_ring = app.add_subcommand("ring", "ring level checks");
  auto* cmd_bq = cmd_ring->add_subcommand("bq-check", "deformed 2x2 ring properties");
  std::string bq_base, bq_q;
  long bq_samples = 1000;
  std::uint64_t bq_seed = 11;
  cmd_bq->add_option("base", bq_base, "base ring JSON or alias")->required();
  cmd_bq->add_option("q", bq_q, "central parameter, JSON element of the base")->required();
  cmd_bq->add_option("--samples", bq_samples, "random samples");
  cmd_bq->add_option("--seed", bq_seed, "sampling seed");

  CLI11_PARSE(app, argc, argv);

  using namespace bicrossed;

  if (cmd_run->parsed()) {
    ScenarioRunner runner(!no_timestamp);
    Json report = runner.run(load_json_file(scenario_path));
    emit(report, out_path);
    return report["verdict"] == "pass" ? 0 : 1;
  }

  if (cmd_pent_verify->parsed()) {
    PentagonalMap map = map_file.empty() ? PentagonalMap::builtin(map_name)
                                         : PentagonalMap::from_json(load_json_file(map_file));
    auto rep = pentagon_identity_check(map, pent_samples, pent_seed);
    Json j{{"map", map.name},
           {"domain", domain_name(map.domain)},
           {"samples", rep.checked},
           {"resampled", rep.resampled},
           {"pentagon", rep.passed}};
    if (rep.counterexample) {
      j["counterexample"] = Json::array();
      for (const auto& c : *rep.counterexample) j["counterexample"].push_back(to_string(c));
    }
    emit(j, out_path);
    return rep.passed ? 0 : 1;
  }

  if (cmd_bic_report->parsed()) {
    auto mp = builtin_pair(pair_name);
    auto rep = regularity_report(mp);
    if (!dump_w_path.empty()) {
      TensorOp W = build_W(mp);
      Json dump;
      dump["pair"] = mp.label;
      dump["legs"] = W.legs();
      Json entries = Json::array();
      for (const auto& q : W.quadruples())
        entries.push_back(Json::array({std::stoll(q[0]), std::stoll(q[1]), q[2], q[3]}));
      dump["entries"] = entries;
      std::ofstream os(dump_w_path);
      os << dump.dump() << "\n";
    }
    emit(rep.to_json(), out_path);
    return (rep.pentagon && rep.verdict == "regular") ? 0 : 1;
  }

  if (cmd_density->parsed()) {
    auto pool = PrimePool::from_json(parse_json_arg(pool_spec));
    auto desc = RingDescriptor::restricted_adeles(pool);
    auto est = unit_density_estimate(desc, nth_prime(static_cast<int>(truncation)),
                                     density_samples, density_seed, density_shards);
    double e = static_cast<double>(est.estimate), cf = static_cast<double>(est.closed_form);
    bool within = std::abs(e - cf) <= 3.0 * est.std_error;
    Json j{{"closed_form", to_string(est.closed_form)},
           {"closed_form_approx", cf},
           {"estimate", to_string(est.estimate)},
           {"estimate_approx", e},
           {"std_error", est.std_error},
           {"samples", est.n_samples},
           {"primes_sampled", est.sampled_primes.size()},
           {"within_3_sigma", within}};
    emit(j, out_path);
    return within ? 0 : 1;
  }

  if (cmd_witness->parsed()) {
    auto pool = PrimePool::from_json(parse_json_arg(witness_pool));
    std::set<std::int64_t> constraint;
    std::stringstream ss(constraint_csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) constraint.insert(std::stoll(tok));
    Adele u = Adele::all_ones(pool);
    auto res = interior_witness(pool, u, constraint);
    bool ok = witness_verifies(u, res, constraint);
    Json j{{"constraint", std::vector<std::int64_t>(constraint.begin(), constraint.end())},
           {"free_prime", res.free_prime},
           {"witness", res.witness.to_json()},
           {"verified_non_unit", ok}};
    emit(j, out_path);
    return ok ? 0 : 1;
  }

  if (cmd_factor->parsed()) {
    auto desc = ring_from_spec(parse_json_arg(ring_spec));
    auto parse_rat = [](const std::string& t) {
      auto slash = t.find('/');
      return slash == std::string::npos
                 ? Rat(Int(t))
                 : Rat(Int(t.substr(0, slash)), Int(t.substr(slash + 1)));
    };
    AxbElement e{ring_from_rational(desc, parse_rat(a_text)),
                 ring_from_rational(desc, parse_rat(x_text))};
    auto f = axb_factorize(desc, e);
    bool round_trip = axb_equal(desc, axb_mul(desc, f.g, f.s), e);
    Json j{{"ring", desc.name()},
           {"g", Json{{"a", ring_element_to_json(desc, f.g.a)}, {"x", ring_element_to_json(desc, f.g.x)}}},
           {"s", Json{{"a", ring_element_to_json(desc, f.s.a)}, {"x", ring_element_to_json(desc, f.s.x)}}},
           {"g_times_s_equals_input", round_trip}};
    emit(j, out_path);
    return round_trip ? 0 : 1;
  }

  if (cmd_eval->parsed()) {
    PadicEval ev{eval_prime, eval_precision, expr_text};
    PAdicNumber v = ev.expr();
    ev.skip();
    if (ev.i != ev.s.size())
      fail(ErrorCode::ParseError, "trailing input at position " + std::to_string(ev.i));
    Json j{{"prime", eval_prime}, {"value", v.str()}};
    if (!v.is_zero_to_precision()) {
      j["valuation"] = v.valuation();
      j["digits"] = v.digits();
      j["precision"] = v.precision();
    }
    emit(j, out_path);
    return 0;
  }

  if (cmd_bq->parsed()) {
    auto base = ring_from_spec(parse_json_arg(bq_base));
    auto q = ring_element_from_json(base, parse_json_arg(bq_q).is_string()
                                              ? nlohmann::json(std::stoll(bq_q))
                                              : parse_json_arg(bq_q));
    auto desc = RingDescriptor::bq_ring(base, q);
    nlohmann::json item{{"subject", {{"ring", desc.to_json()}}},
                        {"checks", {"bq"}},
                        {"samples", bq_samples},
                        {"seed", bq_seed}};
    nlohmann::json scenario{{"schema", kSchemaId}, {"seed", bq_seed},
                            {"items", nlohmann::json::array({item})}};
    ScenarioRunner runner(false);
    Json report = runner.run(scenario);
    emit(report["items"][0]["checks"][0], out_path);
    return report["verdict"] == "pass" ? 0 : 1;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_all(argc, argv);
  } catch (const bicrossed::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
