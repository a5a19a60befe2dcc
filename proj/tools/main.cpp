// hamforms command-line front end.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "hamforms/classify.hpp"
#include "hamforms/congruence.hpp"
#include "hamforms/errors.hpp"
#include "hamforms/serialize.hpp"
#include "hamforms/transforms.hpp"

using namespace hamforms;

namespace {

struct Options {
  std::string pair_path, omega_path, projective_path, reciprocal_path, output, format = "text";
  bool symbolic = false, xt = false, table = false;
  std::optional<std::size_t> sample;
  std::uint64_t seed = 1;
};

struct Report {
  Json json = Json::object();
  std::ostringstream text;
  std::string csv;
  bool passed = true;
};

Json strings(const std::vector<RatFunc>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

// N ≤ 4 symbolic, larger N sampled, unless overridden.
bool use_symbolic(const Options& o, int n) {
  if (o.symbolic) return true;
  if (o.sample) return false;
  return n <= 4;
}

std::size_t sample_count(const Options& o) { return o.sample.value_or(20); }

void mode_fields(Report& r, const Options& o, bool symbolic) {
  r.json["mode"] = symbolic ? "symbolic" : "sampled";
  r.json["seed"] = o.seed;
  if (!symbolic) r.json["samples"] = sample_count(o);
  r.text << "mode: " << (symbolic ? "symbolic" : "sampled (" + std::to_string(sample_count(o)) + " points)")
         << ", seed " << o.seed << "\n";
}

void check(Report& r, const std::string& name, bool ok, const std::string& provenance) {
  r.json["checks"].push_back({{"name", name}, {"passed", ok}, {"provenance", provenance}});
  r.text << (ok ? "ok   " : "FAIL ") << name << " [" << provenance << "]\n";
  r.csv += name + "," + (ok ? "pass" : "fail") + "," + provenance + "\n";
  r.passed = r.passed && ok;
}

Json compat_json(const CompatReport& c) {
  return {{"symbolic", c.symbolic},        {"residual_a", strings(c.residual_a)}, {"residual_b", strings(c.residual_b)},
          {"nonzero_a", c.nonzero_a},      {"nonzero_b", c.nonzero_b},           {"samples", c.samples},
          {"skipped_poles", c.skipped_poles}, {"seed", c.seed},                   {"all_zero", c.all_zero}};
}

CompatReport compat(const HamPair& pair, const Options& o) {
  return use_symbolic(o, pair.N()) ? check_compat(pair) : check_compat_sampled(pair, sample_count(o), o.seed);
}

void add_compat(Report& r, const HamPair& pair, const Options& o, const std::string& label) {
  const auto c = compat(pair, o);
  r.json[label] = compat_json(c);
  r.text << label << ": " << c.nonzero_a << " nonzero first-order, " << c.nonzero_b << " nonzero second-order residuals\n";
  check(r, label, c.all_zero, c.symbolic ? "symbolic" : "sampled");
}

void describe_pair(Report& r, const HamPair& pair, const char* key) {
  r.json[key] = to_json(pair);
  r.json[std::string(key) + "_flux"] = strings(pair.flux());
  for (int i = 0; i < pair.N(); ++i) r.text << "V" << i + 1 << " = " << pair.flux()[i].to_string() << "\n";
}

HamPair input_pair(const Options& o) {
  if (!o.pair_path.empty()) return parse_pair_file(o.pair_path);
  if (!o.omega_path.empty()) return phi(parse_omega_file(o.omega_path));
  throw ValidationError("one of --pair or --omega is required");
}

Report cmd_compose(const Options& o) {
  Report r;
  const auto pair = parse_pair_file(o.pair_path);
  const auto om = phi_inv(pair);
  r.json["omega"] = to_json(om);
  for (const auto& [idx, c] : om.omega.terms()) {
    r.text << "w";
    for (int i : idx) r.text << i;
    r.text << " = " << c.to_string() << "\n";
  }
  check(r, "roundtrip", phi(om) == pair, "symbolic");
  return r;
}

Report cmd_decompose(const Options& o) {
  Report r;
  const auto om = parse_omega_file(o.omega_path);
  const auto pair = phi(om);
  describe_pair(r, pair, "pair");
  r.json["pfaffian"] = pair.pfaffian().to_string();
  r.text << "Pf(g) = " << pair.pfaffian().to_string() << "\n";
  check(r, "roundtrip", phi_inv(pair) == om, "symbolic");
  return r;
}

Report cmd_verify(const Options& o) {
  Report r;
  const auto pair = input_pair(o);
  const bool sym = use_symbolic(o, pair.N());
  mode_fields(r, o, sym);
  r.json["N"] = pair.N();
  add_compat(r, pair, o, "compatibility");
  if (sym) {
    const auto lin = linear_system_residual(pair);
    r.json["linear_residual"] = strings(lin);
    check(r, "g V = W", std::all_of(lin.begin(), lin.end(), [](const RatFunc& x) { return x.is_zero(); }), "symbolic");
    const auto d = degree_report(pair);
    r.json["degrees"] = {{"numerator_degree", d.numerator_degree},
                         {"pf_degree", d.pf_degree},
                         {"denominators_divide_pf", d.denominators_divide_pf},
                         {"flux_bound_ok", d.flux_bound_ok},
                         {"inverse_bound_ok", d.inverse_bound_ok}};
    check(r, "degree bounds", d.denominators_divide_pf && d.flux_bound_ok && d.inverse_bound_ok, "symbolic");
  }
  return r;
}

Report cmd_congruence(const Options& o) {
  Report r;
  const auto pair = input_pair(o);
  const auto om = phi_inv(pair);
  const bool sym = use_symbolic(o, pair.N());
  mode_fields(r, o, sym);
  const auto m = congruence_matrix(om);
  Json table = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    table.push_back(row);
  }
  r.json["columns"] = plucker_labels(static_cast<int>(m.rows()));
  r.json["table"] = table;
  if (o.table) r.text << format_table(m);
  const auto rk = congruence_rank(m);
  r.json["rank"] = rk.rank;
  Json certs = Json::array();
  for (const auto& c : rk.certificates) certs.push_back(strings(c));
  r.json["certificates"] = certs;
  r.text << "rank " << rk.rank << "\n";
  for (const auto& c : rk.certificates) {
    r.text << "dependency:";
    for (const auto& x : c) r.text << " " << x.to_string();
    r.text << "\n";
  }
  if (sym) {
    const auto res = annihilation_check(om, pair);
    r.json["annihilation"] = strings(res);
    check(r, "annihilation", std::all_of(res.begin(), res.end(), [](const RatFunc& x) { return x.is_zero(); }),
          "symbolic");
  } else {
    const auto s = annihilation_check_sampled(om, pair, sample_count(o), o.seed);
    r.json["annihilation"] = {{"samples", s.samples}, {"failures", s.failures}, {"skipped_poles", s.skipped_poles},
                              {"seed", s.seed}};
    check(r, "annihilation", s.all_zero, "sampled");
  }
  if (o.table) r.csv = format_table_csv(m);
  return r;
}

Report cmd_classify(const Options& o) {
  Report r;
  const auto om = parse_omega_file(o.omega_path);
  const auto res = om.N == 2 ? classify_n2(om) : om.N == 4 ? classify_n4(om) : throw ValidationError("classification covers N = 2 and N = 4");
  r.json["N"] = res.N;
  if (res.N == 4) {
    r.json["invariants"] = {{"theta_eta", res.theta_eta.to_string()}, {"Q", res.q.to_string()}};
    r.json["theta13"] = res.theta13.to_string();
    r.text << "T block must already be du125 + du345\n";
  } else {
    Json t = Json::array();
    for (std::size_t i = 0; i < res.transform.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < res.transform.cols(); ++j) row.push_back(res.transform(i, j).to_string());
      t.push_back(row);
    }
    r.json["transform"] = t;
  }
  r.json["log"] = res.log;
  for (const auto& l : res.log) r.text << l << "\n";
  r.json["canonical_omega"] = to_json(res.canonical_omega);
  r.json["canonical_pair"] = to_json(res.canonical_pair);
  r.json["canonical_flux"] = strings(res.canonical_pair.flux());
  const auto sys = format_system(res.system);
  r.json["system"] = sys;
  r.text << sys;
  check(r, "canonical compatibility", check_compat(res.canonical_pair).all_zero, "symbolic");
  return r;
}

Report cmd_transform(const Options& o) {
  Report r;
  const auto pair = input_pair(o);
  const int chosen = (o.projective_path.empty() ? 0 : 1) + (o.xt ? 1 : 0) + (o.reciprocal_path.empty() ? 0 : 1);
  if (chosen != 1) throw ValidationError("choose exactly one of --projective, --xt, --reciprocal");
  const bool sym = use_symbolic(o, pair.N());
  mode_fields(r, o, sym);
  HamPair image;
  if (!o.projective_path.empty()) {
    const auto res = apply_projective(pair, projective_from_json(read_json_file(o.projective_path)));
    image = res.pair;
    r.json["transform"] = "projective";
    r.json["denominator"] = res.denominator.to_string();
    check(r, "metric conformal", res.metric_conformal, "symbolic");
    check(r, "covector conformal", res.covector_conformal, "symbolic");
  } else if (o.xt) {
    const auto res = apply_xt_exchange(pair, sym);
    image = res.pair;
    r.json["transform"] = "xt";
    if (res.identities_checked) {
      check(r, "metric identity", res.metric_identity, "symbolic");
      check(r, "inverse identity", res.inverse_identity, "symbolic");
    }
  } else {
    const auto res = apply_reciprocal(pair, reciprocal_from_json(read_json_file(o.reciprocal_path)));
    image = res.pair;
    r.json["transform"] = "reciprocal";
    r.json["factors"] = res.factors;
    for (const auto& f : res.factors) r.text << "factor " << f << "\n";
    check(r, "factorization", res.factorization_ok, "symbolic");
    check(r, "direct form action", res.direct_agrees, "symbolic");
  }
  describe_pair(r, image, "image");
  add_compat(r, image, o, "image compatibility");
  return r;
}

Report cmd_audit(const Options&) {
  Report r;
  Json dims = Json::array();
  for (int n : {2, 4, 6, 8}) {
    const auto d = dimension_audit(n);
    dims.push_back({{"N", n}, {"omega", d.omega}, {"tilde_T", d.tilde_T}, {"T", d.T}, {"g0", d.g0}, {"A", d.A},
                    {"B", d.B}, {"tilde_A", d.tilde_A}});
    r.text << "N=" << n << ": " << d.omega << " = " << d.tilde_T << " + " << d.A << " + " << d.B << "\n";
    check(r, "dimension count N=" + std::to_string(n),
          d.omega_split_ok && d.tilde_T_split_ok && d.tilde_A_split_ok && d.stored_counts_ok, "symbolic");
  }
  r.json["dimensions"] = dims;
  const auto s = stabilizer_audit(4);
  r.json["stabilizer"] = {{"generators", s.generators}, {"first_order_ok", s.first_order_ok},
                          {"independent", s.independent}, {"transvections_exact", s.transvections_exact},
                          {"shears_exact", s.shears_exact}, {"negative_control_detected", s.negative_control_detected}};
  r.text << "stabilizer: " << s.generators.size() << " generators, " << s.independent << " independent\n";
  check(r, "stabilizer of T4", s.all_ok, "symbolic");
  return r;
}

void emit(const Report& r, const Options& o, const std::string& command) {
  std::string out;
  if (o.format == "json") {
    Json j = {{"command", command}};
    j.update(r.json);
    j["passed"] = r.passed;
    out = j.dump(2) + "\n";
  } else if (o.format == "csv") {
    out = r.csv.empty() || r.csv.rfind("row,", 0) == 0 ? r.csv : "check,status,provenance\n" + r.csv;
  } else {
    out = r.text.str() + (r.passed ? "PASS\n" : "FAIL\n");
  }
  if (o.output.empty()) {
    std::cout << out;
  } else {
    std::ofstream f(o.output);
    if (!f) throw ParseError(o.output + ": cannot write");
    f << out;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian pairs and alternating three-forms"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    auto* sym = sub->add_flag("--symbolic", o.symbolic, "Exact symbolic checks");
    auto* smp = sub->add_option("--sample", o.sample, "Check at this many random rational points")->check(CLI::PositiveNumber);
    sym->excludes(smp);
    sub->add_option("--seed", o.seed, "Seed for sampled checks");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--output", o.output, "Write the report here");
  };
  auto source = [&](CLI::App* sub) {
    auto* p = sub->add_option("--pair", o.pair_path, "Pair file")->check(CLI::ExistingFile);
    auto* w = sub->add_option("--omega", o.omega_path, "Three-form file")->check(CLI::ExistingFile);
    p->excludes(w);
  };

  auto* compose = app.add_subcommand("compose", "Pair to three-form");
  compose->add_option("--pair", o.pair_path, "Pair file")->required()->check(CLI::ExistingFile);
  common(compose);
  auto* decompose = app.add_subcommand("decompose", "Three-form to pair");
  decompose->add_option("--omega", o.omega_path, "Three-form file")->required()->check(CLI::ExistingFile);
  common(decompose);
  auto* verify = app.add_subcommand("verify", "Compatibility of a pair");
  source(verify);
  common(verify);
  auto* congruence = app.add_subcommand("congruence", "Line congruence equations");
  source(congruence);
  congruence->add_flag("--table", o.table, "Print the coefficient table");
  common(congruence);
  auto* classify = app.add_subcommand("classify", "Canonical form for N = 2, 4");
  classify->add_option("--omega", o.omega_path, "Three-form file")->required()->check(CLI::ExistingFile);
  common(classify);
  auto* transform = app.add_subcommand("transform", "Projective, x-t exchange or reciprocal image");
  source(transform);
  transform->add_option("--projective", o.projective_path, "Projective map file")->check(CLI::ExistingFile);
  transform->add_flag("--xt", o.xt, "Exchange x and t");
  transform->add_option("--reciprocal", o.reciprocal_path, "Reciprocal map file")->check(CLI::ExistingFile);
  common(transform);
  auto* audit = app.add_subcommand("audit", "Dimension counts and the N=4 stabilizer");
  common(audit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    Report r;
    if (name == "compose") r = cmd_compose(o);
    else if (name == "decompose") r = cmd_decompose(o);
    else if (name == "verify") r = cmd_verify(o);
    else if (name == "congruence") r = cmd_congruence(o);
    else if (name == "classify") r = cmd_classify(o);
    else if (name == "transform") r = cmd_transform(o);
    else r = cmd_audit(o);
    emit(r, o, name);
    return r.passed ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
