#include "permgraph/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "permgraph/closed_form.hpp"
#include "permgraph/mc.hpp"
#include "permgraph/oracle.hpp"
#include "permgraph/permutation.hpp"
#include "permgraph/samplers.hpp"
#include "permgraph/statistics.hpp"

namespace permgraph {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Name lookups fail with invalid_argument; from the command line that is a usage error.
template <class F>
auto as_usage(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> parts;
  std::string current;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

double parse_double(const std::string& text, const std::string& flag) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::logic_error&) {
    throw UsageError(flag + ": '" + text + "' is not a number");
  }
  if (used != text.size()) throw UsageError(flag + ": '" + text + "' is not a number");
  return v;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  for (const auto& part : split_top_level(text)) out.push_back(parse_double(part, flag));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

std::string format_real(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string json_text(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

// ---- flags shared across subcommands --------------------------------------------

struct OutputFlags {
  std::string out;
  std::string format;
};

void add_output_flags(CLI::App* sub, OutputFlags& flags, const std::vector<std::string>& formats) {
  sub->add_option("--out", flags.out, "Write the report to this file instead of stdout");
  sub->add_option("--format", flags.format, "Output format")->check(CLI::IsMember(formats));
}

void emit(const OutputFlags& flags, const std::string& text, std::ostream& out) {
  if (flags.out.empty()) {
    out << text;
  } else {
    write_file(flags.out, text);
  }
}

struct ParamFlags {
  std::optional<long> m, k, d, i, j;

  void add(CLI::App* sub) {
    sub->add_option("--m", m, "Subsequence / clique length");
    sub->add_option("--k", k, "Vertex index");
    sub->add_option("--d", d, "Degree value");
    sub->add_option("--i", i, "First index");
    sub->add_option("--j", j, "Second index");
  }
  StatisticParams params() const { return {m, k, d, i, j}; }
};

StatisticId make_statistic(const std::string& name, const ParamFlags& flags) {
  StatisticId id{as_usage([&] { return parse_statistic_name(name); }), flags.params()};
  as_usage([&] {
    id.validate();
    return 0;
  });
  return id;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, bool strict) {
  if (seed) return *seed;
  if (strict) throw UsageError("--strict-repro requires an explicit --seed");
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::size_t require_positive(long v, const std::string& flag) {
  if (v < 1) throw std::out_of_range(flag + " must be >= 1");
  return static_cast<std::size_t>(v);
}

struct SamplerFlags {
  std::string kind = "uniform";
  std::optional<long> a;
  std::string p;
  std::string phi = "identity";

  void add(CLI::App* sub) {
    sub->add_option("--sampler", kind, "uniform | riffle | unfair")
        ->check(CLI::IsMember({"uniform", "riffle", "unfair"}));
    sub->add_option("--a", a, "Number of riffle piles (uniform pile probabilities)");
    sub->add_option("--p", p, "Pile probabilities p1,p2,...");
    sub->add_option("--phi", phi, "identity | const:C | table:FILE");
  }
};

PhiSequence parse_phi(const std::string& text) {
  if (text == "identity") return PhiSequence::identity();
  if (text.rfind("const:", 0) == 0) {
    const std::string value = text.substr(6);
    std::size_t used = 0;
    unsigned long long c = 0;
    try {
      c = std::stoull(value, &used);
    } catch (const std::logic_error&) {
      throw UsageError("--phi: bad constant '" + value + "'");
    }
    if (used != value.size()) throw UsageError("--phi: bad constant '" + value + "'");
    return PhiSequence::constant(c);
  }
  if (text.rfind("table:", 0) == 0) {
    std::string body = read_file(text.substr(6));
    for (char& c : body) {
      if (c == ',') c = ' ';
    }
    std::istringstream in(body);
    std::vector<std::uint64_t> values;
    std::string token;
    while (in >> token) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(token, &used);
      } catch (const std::logic_error&) {
        throw std::invalid_argument("phi table: bad entry '" + token + "'");
      }
      if (used != token.size() || v < 1) throw std::invalid_argument("phi table: entries must be integers >= 1");
      values.push_back(static_cast<std::uint64_t>(v));
    }
    return PhiSequence::table(std::move(values));
  }
  throw UsageError("--phi must be identity, const:C or table:FILE");
}

SamplerSpec build_sampler(const SamplerFlags& flags) {
  SamplerSpec spec;
  if (flags.kind == "uniform") {
    spec.kind = SamplerKind::uniform;
  } else if (flags.kind == "riffle") {
    spec.kind = SamplerKind::riffle;
    if (!flags.p.empty()) {
      spec.piles.p = parse_double_list(flags.p, "--p");
      if (flags.a && static_cast<std::size_t>(*flags.a) != spec.piles.p.size()) {
        throw std::invalid_argument("--a disagrees with the number of --p entries");
      }
    } else {
      const long a = flags.a.value_or(2);
      if (a < 1) throw std::out_of_range("--a must be >= 1");
      spec.piles = PileSpec::uniform(static_cast<std::size_t>(a));
    }
    spec.piles.validate();
  } else {
    spec.kind = SamplerKind::unfair;
    spec.phi = parse_phi(flags.phi);
  }
  return spec;
}

nlohmann::ordered_json sampler_json(const SamplerSpec& spec) {
  nlohmann::ordered_json j;
  j["kind"] = spec.describe();
  if (spec.kind == SamplerKind::riffle) j["p"] = spec.piles.p;
  if (spec.kind == SamplerKind::unfair) j["phi"] = spec.phi.describe();
  return j;
}

std::string histogram_csv(const Histogram& h) {
  std::string text = "bin_left,bin_right,count\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    text += format_real(h.edges[b], 17) + "," + format_real(h.edges[b + 1], 17) + "," +
            std::to_string(h.counts[b]) + "\n";
  }
  return text;
}

// ---- exact formulas -------------------------------------------------------------

struct ExactArgs {
  std::optional<long> n, m, k, i, j;
  std::optional<double> x;
  std::string variant;
};

using ExactValue = std::variant<Rational, double>;

struct FormulaEntry {
  std::string params;  // letters from "nmkijx"
  bool has_variant;
  std::function<ExactValue(const ExactArgs&)> eval;
};

std::uint64_t u(const std::optional<long>& v, const char* flag) {
  if (*v < 0) throw std::out_of_range(std::string("--") + flag + " must be >= 0");
  return static_cast<std::uint64_t>(*v);
}

FormulaVariant variant_of(const ExactArgs& a) {
  return as_usage([&] { return parse_variant(a.variant); });
}

const std::map<std::string, FormulaEntry>& formula_table() {
  static const std::map<std::string, FormulaEntry> table = {
      {"expected_cliques", {"nm", false, [](const ExactArgs& a) -> ExactValue {
                              return expected_cliques(u(a.n, "n"), u(a.m, "m"));
                            }}},
      {"second_moment_cliques", {"nm", false, [](const ExactArgs& a) -> ExactValue {
                                   return second_moment_cliques(u(a.n, "n"), u(a.m, "m"));
                                 }}},
      {"variance_cliques", {"nm", false, [](const ExactArgs& a) -> ExactValue {
                              return variance_cliques(u(a.n, "n"), u(a.m, "m"));
                            }}},
      {"variance_cliques_asymptote", {"nm", false, [](const ExactArgs& a) -> ExactValue {
                                        return variance_cliques_asymptote(u(a.n, "n"), u(a.m, "m"));
                                      }}},
      {"inversion_mean", {"n", true, [](const ExactArgs& a) -> ExactValue {
                            return inversion_moments(u(a.n, "n"), variant_of(a)).mean;
                          }}},
      {"inversion_variance", {"n", true, [](const ExactArgs& a) -> ExactValue {
                                return inversion_moments(u(a.n, "n"), variant_of(a)).variance;
                              }}},
      {"degree_mean", {"nk", true, [](const ExactArgs& a) -> ExactValue {
                         return degree_moments(u(a.n, "n"), u(a.k, "k"), variant_of(a)).mean;
                       }}},
      {"degree_variance", {"nk", true, [](const ExactArgs& a) -> ExactValue {
                             return degree_moments(u(a.n, "n"), u(a.k, "k"), variant_of(a)).variance;
                           }}},
      {"isolated_probability", {"nk", true, [](const ExactArgs& a) -> ExactValue {
                                  return isolated_vertex_probability(u(a.n, "n"), u(a.k, "k"), variant_of(a));
                                }}},
      {"expected_isolated", {"n", true, [](const ExactArgs& a) -> ExactValue {
                               return expected_isolated(u(a.n, "n"), variant_of(a));
                             }}},
      {"consecutive_isolated", {"nik", true, [](const ExactArgs& a) -> ExactValue {
                                  return consecutive_isolated_probability(u(a.n, "n"), u(a.i, "i"), u(a.k, "k"),
                                                                          variant_of(a));
                                }}},
      {"binomial_reciprocal_sum", {"n", false, [](const ExactArgs& a) -> ExactValue {
                                     return binomial_reciprocal_sum(u(a.n, "n")).sum;
                                   }}},
      {"level_mean", {"n", true, [](const ExactArgs& a) -> ExactValue {
                        return level_moments(u(a.n, "n"), variant_of(a)).mean;
                      }}},
      {"level_variance", {"n", true, [](const ExactArgs& a) -> ExactValue {
                            return level_moments(u(a.n, "n"), variant_of(a)).variance;
                          }}},
      {"total_cycle_mean", {"n", false, [](const ExactArgs& a) -> ExactValue {
                              return total_cycle_moments(u(a.n, "n")).mean;
                            }}},
      {"total_cycle_second_moment", {"n", false, [](const ExactArgs& a) -> ExactValue {
                                       return total_cycle_moments(u(a.n, "n")).second_moment;
                                     }}},
      {"common_neighbor", {"nij", true, [](const ExactArgs& a) -> ExactValue {
                             const auto p = common_neighbor_probability(u(a.n, "n"), u(a.i, "i"), u(a.j, "j"));
                             if (a.variant == "printed" || a.variant == "as_printed") return p.p_printed;
                             if (a.variant == "printed_integral") return p.p_complement_integral;
                             if (a.variant == "corrected") return p.p_complement_integral_corrected;
                             throw UsageError("common_neighbor variants: printed, printed_integral, corrected");
                           }}},
      {"level_mean_asymptotic", {"n", false, [](const ExactArgs& a) -> ExactValue {
                                   return level_asymptotics(u(a.n, "n")).mean_approx;
                                 }}},
      {"level_variance_asymptotic", {"n", false, [](const ExactArgs& a) -> ExactValue {
                                       return level_asymptotics(u(a.n, "n")).var_approx;
                                     }}},
      {"total_cycle_log_mean_asymptotic", {"n", false, [](const ExactArgs& a) -> ExactValue {
                                             return total_cycle_asymptotics(u(a.n, "n")).log_mean_approx;
                                           }}},
      {"total_cycle_log_second_moment_asymptotic", {"n", false, [](const ExactArgs& a) -> ExactValue {
                                                      return total_cycle_asymptotics(u(a.n, "n"))
                                                          .log_second_moment_approx;
                                                    }}},
      {"lis_center", {"n", false, [](const ExactArgs& a) -> ExactValue { return lis_scaling(u(a.n, "n")).center; }}},
      {"standard_normal_cdf", {"x", false, [](const ExactArgs& a) -> ExactValue { return standard_normal_cdf(*a.x); }}},
      {"mixture_normal_cdf", {"x", false, [](const ExactArgs& a) -> ExactValue { return mixture_normal_cdf(*a.x); }}},
      {"mixture_normal_pdf", {"x", false, [](const ExactArgs& a) -> ExactValue { return mixture_normal_pdf(*a.x); }}},
      {"rayleigh_tail", {"x", false, [](const ExactArgs& a) -> ExactValue { return rayleigh_tail(*a.x); }}},
  };
  return table;
}

// ---- subcommands ----------------------------------------------------------------

struct Invocation {
  OutputFlags output;
  bool strict = false;
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
  std::optional<long> n;
  ParamFlags params;
  SamplerFlags sampler;
  std::string stat;
  std::string perm;
  std::string in_path;
  long count = 1;
  std::string riffle_form = "inverse";
  std::string formula;
  std::string variant = "corrected";
  std::optional<double> x;
  std::optional<unsigned> digits;
  bool allow_n10 = false;
  long n_min = 2;
  std::optional<long> n_max;
  std::optional<long> reps;
  std::string normalize;
  std::string ks;
  std::optional<long> bins;
  std::string emit_hist;
  std::string samples_csv;
  bool timing = false;
  std::string preset;
};

void run_sample(Invocation& inv, std::ostream& out) {
  const std::size_t n = require_positive(*inv.n, "--n");
  const std::size_t count = require_positive(inv.count, "--count");
  const SamplerSpec spec = build_sampler(inv.sampler);
  const std::uint64_t seed = resolve_seed(inv.seed, inv.strict);
  std::vector<Permutation> perms;
  perms.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    if (spec.kind == SamplerKind::riffle && inv.riffle_form == "piles") {
      perms.push_back(sample_riffle_piles(n, spec.piles, RngState{seed, r}));
    } else {
      Rng rng(RngState{seed, r});
      perms.push_back(spec.draw(n, rng));
    }
  }
  std::string text;
  if (inv.output.format == "json") {
    nlohmann::ordered_json j;
    j["config"] = {{"n", n},        {"count", count}, {"sampler", sampler_json(spec)},
                   {"seed", seed},  {"riffle_form", inv.riffle_form},
                   {"generator", std::string(Rng::kGeneratorId)}};
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& p : perms) list.push_back(format_permutation(p));
    j["permutations"] = list;
    text = json_text(j);
  } else {
    if (inv.output.format == "csv") text = "replicate,permutation\n";
    for (std::size_t r = 0; r < count; ++r) {
      if (inv.output.format == "csv") text += std::to_string(r) + ",";
      text += format_permutation(perms[r]) + "\n";
    }
  }
  emit(inv.output, text, out);
}

void run_stats(Invocation& inv, std::ostream& out) {
  if (inv.perm.empty() == inv.in_path.empty()) throw UsageError("give exactly one of --perm or --in");
  const StatisticId id = make_statistic(inv.stat, inv.params);
  std::vector<Permutation> perms;
  if (!inv.perm.empty()) {
    perms.push_back(parse_permutation(inv.perm));
  } else {
    std::istringstream in(read_file(inv.in_path));
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
      perms.push_back(parse_permutation(line));
    }
  }
  std::vector<std::string> values;
  for (const auto& p : perms) values.push_back(to_string(evaluate(id, p)));

  std::string text;
  if (inv.output.format == "json") {
    nlohmann::ordered_json j;
    j["statistic"] = to_json(id);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < perms.size(); ++r) {
      rows.push_back({{"permutation", format_permutation(perms[r])}, {"value", values[r]}});
    }
    j["results"] = rows;
    text = json_text(j);
  } else if (inv.output.format == "csv") {
    text = "permutation,statistic,value\n";
    for (std::size_t r = 0; r < perms.size(); ++r) {
      text += "\"" + format_permutation(perms[r]) + "\"," + id.describe() + "," + values[r] + "\n";
    }
  } else {
    for (const auto& v : values) text += v + "\n";
  }
  emit(inv.output, text, out);
}

void run_exact(Invocation& inv, std::ostream& out) {
  const auto& table = formula_table();
  const auto it = table.find(inv.formula);
  if (it == table.end()) throw UsageError("unknown formula '" + inv.formula + "'");
  const FormulaEntry& entry = it->second;

  ExactArgs args{inv.n, inv.params.m, inv.params.k, inv.params.i, inv.params.j, inv.x, inv.variant};
  const std::pair<char, bool> given[] = {{'n', args.n.has_value()}, {'m', args.m.has_value()},
                                         {'k', args.k.has_value()}, {'i', args.i.has_value()},
                                         {'j', args.j.has_value()}, {'x', args.x.has_value()}};
  for (auto [letter, present] : given) {
    const bool needed = entry.params.find(letter) != std::string::npos;
    if (needed && !present) throw UsageError(inv.formula + " requires --" + std::string(1, letter));
    if (!needed && present) throw UsageError(inv.formula + " does not take --" + std::string(1, letter));
  }
  if (inv.params.d) throw UsageError(inv.formula + " does not take --d");

  const ExactValue value = entry.eval(args);
  std::string rendered;
  std::string kind;
  if (const auto* q = std::get_if<Rational>(&value)) {
    kind = "rational";
    rendered = inv.digits ? to_decimal(*q, *inv.digits) : to_string(*q);
  } else {
    kind = "real";
    rendered = format_real(std::get<double>(value), inv.digits ? static_cast<int>(*inv.digits) : 17);
  }

  std::string text;
  if (inv.output.format == "json") {
    nlohmann::ordered_json j;
    j["formula"] = inv.formula;
    j["variant"] = entry.has_variant ? nlohmann::ordered_json(inv.variant) : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    if (args.n) params["n"] = *args.n;
    if (args.m) params["m"] = *args.m;
    if (args.k) params["k"] = *args.k;
    if (args.i) params["i"] = *args.i;
    if (args.j) params["j"] = *args.j;
    if (args.x) params["x"] = *args.x;
    j["params"] = params;
    j["kind"] = kind;
    j["value"] = rendered;
    text = json_text(j);
  } else {
    text = rendered + "\n";
  }
  emit(inv.output, text, out);
}

EnumerationOptions enumeration_options(const Invocation& inv) {
  return {inv.allow_n10 ? kMaxEnumerationCap : kDefaultEnumerationCap, inv.threads};
}

void run_oracle(Invocation& inv, std::ostream& out) {
  const std::size_t n = require_positive(*inv.n, "--n");
  const StatisticId id = make_statistic(inv.stat, inv.params);
  const auto table = enumerate_distribution(n, id, enumeration_options(inv));
  std::string text;
  if (inv.output.format == "csv") {
    text = "value,count\n";
    for (const auto& [v, c] : table.entries) text += to_string(v) + "," + to_string(c) + "\n";
  } else {
    text = json_text(to_json(table));
  }
  emit(inv.output, text, out);
}

void run_arbitrate(Invocation& inv, std::ostream& out) {
  if (inv.n_min < 1) throw std::out_of_range("--n-min must be >= 1");
  const std::size_t n_max = require_positive(*inv.n_max, "--n-max");
  const auto known = registered_formulas();
  if (std::find(known.begin(), known.end(), inv.formula) == known.end()) {
    throw UsageError("unknown formula '" + inv.formula + "'");
  }
  const auto report =
      arbitrate_formula(inv.formula, static_cast<std::size_t>(inv.n_min), n_max, enumeration_options(inv));
  std::string text;
  if (inv.output.format == "csv") {
    text = "variant,verdict,points_tested,n,params,formula_value,oracle_value\n";
    for (const auto& v : report.variants) {
      text += v.variant + "," + std::string(verdict_name(v.verdict)) + "," + std::to_string(v.points_tested);
      if (v.counterexample) {
        std::string params;
        for (const auto& [name, value] : v.counterexample->params) {
          params += (params.empty() ? "" : ";") + name + "=" + std::to_string(value);
        }
        text += "," + std::to_string(v.counterexample->n) + "," + params + "," + v.counterexample->formula_value +
                "," + v.counterexample->oracle_value;
      } else {
        text += ",,,,";
      }
      text += "\n";
    }
  } else {
    text = json_text(to_json(report));
  }
  emit(inv.output, text, out);
}

void write_side_outputs(const Invocation& inv, const MCReport& report) {
  if (!inv.emit_hist.empty()) write_file(inv.emit_hist, histogram_csv(report.histogram));
  if (!inv.samples_csv.empty()) {
    std::string text = "replicate,value\n";
    for (std::size_t r = 0; r < report.samples.size(); ++r) {
      text += std::to_string(r) + "," + format_real(report.samples[r], 17) + "\n";
    }
    write_file(inv.samples_csv, text);
  }
}

void run_mc(Invocation& inv, std::ostream& out) {
  MCConfig config;
  config.n = require_positive(*inv.n, "--n");
  config.replications = require_positive(*inv.reps, "--reps");
  config.sampler = build_sampler(inv.sampler);
  config.statistic = make_statistic(inv.stat, inv.params);
  config.seed = resolve_seed(inv.seed, inv.strict);
  if (!inv.normalize.empty()) {
    const auto values = parse_double_list(inv.normalize, "--normalize");
    if (values.size() != 2) throw UsageError("--normalize expects center,scale");
    config.normalization = Normalization{values[0], values[1]};
  }
  if (!inv.ks.empty()) {
    for (const auto& name : split_top_level(inv.ks)) {
      config.ks_laws.push_back(as_usage([&] { return ReferenceLaw::parse(name); }));
    }
  }
  if (inv.bins) config.bins = require_positive(*inv.bins, "--bins");

  const ExecutionOptions options{inv.threads, !inv.samples_csv.empty(), inv.timing};
  const MCReport report = permgraph::run_mc(config, options);
  write_side_outputs(inv, report);
  emit(inv.output, inv.output.format == "csv" ? histogram_csv(report.histogram) : json_text(to_json(report)), out);
}

void run_diagnose(Invocation& inv, std::ostream& out) {
  const DiagnosisPreset preset = as_usage([&] { return parse_preset(inv.preset); });
  const std::uint64_t seed = resolve_seed(inv.seed, inv.strict);
  auto [config, laws] =
      diagnosis_preset(preset, require_positive(*inv.n, "--n"), require_positive(*inv.reps, "--reps"), seed);
  if (inv.bins) config.bins = require_positive(*inv.bins, "--bins");
  const ExecutionOptions options{inv.threads, !inv.samples_csv.empty(), inv.timing};
  const auto report = limit_law_diagnosis(config, laws, options, std::string(preset_name(preset)));
  write_side_outputs(inv, report.run);
  std::string text;
  if (inv.output.format == "csv") {
    text = "law,ks\n";
    for (const auto& c : report.ranking) text += c.law + "," + format_real(c.ks, 17) + "\n";
  } else {
    text = json_text(to_json(report));
  }
  emit(inv.output, text, out);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random permutation graph laboratory", "permgraph"};
  app.require_subcommand(1);
  Invocation inv;

  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", inv.threads, "Worker threads (results do not depend on it)")
        ->check(CLI::Range(1u, 1024u));
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", inv.seed, "Master seed");
    sub->add_flag("--strict-repro", inv.strict, "Refuse to run without --seed");
  };

  auto* sample = app.add_subcommand("sample", "Draw permutations, one per line");
  sample->add_option("--n", inv.n, "Permutation size")->required();
  inv.sampler.add(sample);
  sample->add_option("--count", inv.count, "Number of permutations");
  sample->add_option("--riffle-form", inv.riffle_form, "Riffle construction: piles | inverse")
      ->check(CLI::IsMember({"piles", "inverse"}));
  add_seed(sample);
  add_output_flags(sample, inv.output, {"text", "csv", "json"});

  auto* stats = app.add_subcommand("stats", "Evaluate a statistic on given permutations");
  stats->add_option("--perm", inv.perm, "Permutation in one-line notation, e.g. \"5 2 3 1 4\"");
  stats->add_option("--in", inv.in_path, "File with one permutation per line");
  stats->add_option("--stat", inv.stat, "Statistic name")->required();
  inv.params.add(stats);
  add_output_flags(stats, inv.output, {"text", "csv", "json"});

  auto* exact = app.add_subcommand("exact", "Evaluate a closed-form expression");
  exact->add_option("--formula", inv.formula, "Formula name")->required();
  exact->add_option("--variant", inv.variant, "printed | corrected (common_neighbor also printed_integral)");
  exact->add_option("--n", inv.n, "Permutation size");
  exact->add_option("--m", inv.params.m, "Clique length");
  exact->add_option("--k", inv.params.k, "Vertex index / run length");
  exact->add_option("--i", inv.params.i, "First index");
  exact->add_option("--j", inv.params.j, "Second index");
  exact->add_option("--d", inv.params.d, "Unused by every formula; rejected");
  exact->add_option("--x", inv.x, "Argument of a limit-law CDF or density");
  exact->add_option("--digits", inv.digits, "Print a decimal with this many digits");
  add_output_flags(exact, inv.output, {"text", "json"});

  auto* oracle = app.add_subcommand("oracle", "Exact distribution of a statistic over S_n");
  oracle->add_option("--n", inv.n, "Permutation size")->required();
  oracle->add_option("--stat", inv.stat, "Statistic name")->required();
  inv.params.add(oracle);
  oracle->add_flag("--allow-n10", inv.allow_n10, "Permit n = 10 (3.6 million permutations)");
  add_threads(oracle);
  add_output_flags(oracle, inv.output, {"json", "csv"});

  auto* arbitrate = app.add_subcommand("arbitrate", "Compare formula variants with exhaustive enumeration");
  arbitrate->add_option("--formula", inv.formula, "Registered formula")->required();
  arbitrate->add_option("--n-min", inv.n_min, "Smallest n tested");
  arbitrate->add_option("--n-max", inv.n_max, "Largest n tested")->required();
  arbitrate->add_flag("--allow-n10", inv.allow_n10, "Permit n = 10");
  add_threads(arbitrate);
  add_output_flags(arbitrate, inv.output, {"json", "csv"});

  auto* mc = app.add_subcommand("mc", "Monte Carlo run of a statistic");
  mc->add_option("--n", inv.n, "Permutation size")->required();
  mc->add_option("--reps", inv.reps, "Replications")->required();
  mc->add_option("--stat", inv.stat, "Statistic name")->required();
  inv.params.add(mc);
  inv.sampler.add(mc);
  add_seed(mc);
  mc->add_option("--normalize", inv.normalize, "center,scale applied as (x - center) / scale");
  mc->add_option("--ks", inv.ks, "Reference laws for KS distances, comma separated");
  mc->add_option("--bins", inv.bins, "Fixed histogram bin count (default Freedman-Diaconis)");
  mc->add_option("--emit-hist", inv.emit_hist, "Write histogram CSV (bin_left,bin_right,count)");
  mc->add_option("--samples-csv", inv.samples_csv, "Write every sampled value");
  mc->add_flag("--timing", inv.timing, "Record wall-clock time in the report");
  add_threads(mc);
  add_output_flags(mc, inv.output, {"json", "csv"});

  auto* diagnose = app.add_subcommand("diagnose", "Rank candidate limit laws by KS distance");
  diagnose->add_option("--preset", inv.preset, "midnode | midnode_printed | extremal | smallk")->required();
  diagnose->add_option("--n", inv.n, "Permutation size")->required();
  diagnose->add_option("--reps", inv.reps, "Replications")->required();
  add_seed(diagnose);
  diagnose->add_option("--bins", inv.bins, "Fixed histogram bin count");
  diagnose->add_option("--emit-hist", inv.emit_hist, "Write histogram CSV");
  diagnose->add_option("--samples-csv", inv.samples_csv, "Write every sampled value");
  diagnose->add_flag("--timing", inv.timing, "Record wall-clock time in the report");
  add_threads(diagnose);
  add_output_flags(diagnose, inv.output, {"json", "csv"});

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  try {
    if (sample->parsed()) run_sample(inv, out);
    if (stats->parsed()) run_stats(inv, out);
    if (exact->parsed()) run_exact(inv, out);
    if (oracle->parsed()) run_oracle(inv, out);
    if (arbitrate->parsed()) run_arbitrate(inv, out);
    if (mc->parsed()) run_mc(inv, out);
    if (diagnose->parsed()) run_diagnose(inv, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace permgraph
