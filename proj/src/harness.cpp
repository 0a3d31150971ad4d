#include "widthlab/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "widthlab/bset.hpp"
#include "widthlab/errors.hpp"
#include "widthlab/galois_norm.hpp"
#include "widthlab/width.hpp"

namespace widthlab {

using json = nlohmann::ordered_json;

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"width-growth", "so2-witness", "lemma3-rates", "bset-build",
                                              "norm-axioms"};
  return names;
}

std::map<std::string, std::string> default_params(const std::string& sub) {
  if (sub == "width-growth") return {{"k_min", "1"}, {"k_max", "8"}, {"r", "1"}, {"sign", "1"}};
  if (sub == "so2-witness") {
    return {{"mode", "valuation"}, {"n_min", "0"}, {"n_max", "3"}, {"generate_n_max", "3"}, {"k_max", "6"}};
  }
  if (sub == "lemma3-rates") {
    return {{"p", "2"}, {"e", "1"}, {"f", "2"}, {"method", "auto"}, {"trials", "10000"}, {"cap", "4194304"}};
  }
  if (sub == "bset-build") {
    return {{"p", "2"},      {"e0", "3"},      {"depth", "2"},   {"f_schedule", "2,3"}, {"budget", "5000"},
            {"family", "default"}, {"m_level", "0"}, {"state", ""}, {"cap", "50000000"}};
  }
  if (sub == "norm-axioms") return {{"suite", "all"}, {"pairs", "1000"}, {"tol", "1/100"}};
  throw Error(ErrorKind::ConfigError, "unknown subcommand '" + sub + "'");
}

ExperimentConfig resolve(ExperimentConfig cfg) {
  auto defaults = default_params(cfg.subcommand);
  for (const auto& [k, v] : cfg.params) {
    if (!defaults.count(k)) throw Error(ErrorKind::ConfigError, "unknown key '" + k + "' for " + cfg.subcommand);
    defaults[k] = v;
  }
  cfg.params = std::move(defaults);
  if (cfg.format != "csv" && cfg.format != "jsonl") {
    throw Error(ErrorKind::ConfigError, "format must be csv or jsonl, got '" + cfg.format + "'");
  }
  return cfg;
}

std::string canonical_json(const ExperimentConfig& cfg) {
  json params = json::object();
  for (const auto& [k, v] : cfg.params) params[k] = v;  // std::map keeps keys sorted
  json j;
  j["format"] = cfg.format;
  j["params"] = params;
  j["seed"] = cfg.seed;
  j["subcommand"] = cfg.subcommand;
  return j.dump();
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorKind::ConfigError, "line " + std::to_string(lineno) + ": expected key=value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

namespace {

// ------------------------------------------------------------------- params

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorKind::ConfigError, key + " must be a non-negative integer, got '" + v + "'");
  }
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw Error(ErrorKind::ConfigError, key + " is out of range");
  }
}

long to_long(const std::string& key, const std::string& v) {
  if (!v.empty() && v[0] == '-') return -static_cast<long>(to_u64(key, v.substr(1)));
  return static_cast<long>(to_u64(key, v));
}

class Params {
 public:
  explicit Params(const ExperimentConfig& cfg) : p_(cfg.params) {}
  const std::string& str(const std::string& k) const { return p_.at(k); }
  std::uint64_t u64(const std::string& k) const { return to_u64(k, str(k)); }
  long i64(const std::string& k) const { return to_long(k, str(k)); }
  Rational rational(const std::string& k) const {
    try {
      return rational_from_text(str(k));
    } catch (const Error&) {
      throw Error(ErrorKind::ConfigError, k + " must be an exact rational, got '" + str(k) + "'");
    }
  }
  std::vector<std::uint64_t> list(const std::string& k) const {
    std::vector<std::uint64_t> out;
    std::istringstream in(str(k));
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(to_u64(k, item));
    if (out.empty()) throw Error(ErrorKind::ConfigError, k + " must not be empty");
    return out;
  }
  std::string choice(const std::string& k, std::initializer_list<const char*> allowed) const {
    for (const char* a : allowed) {
      if (str(k) == a) return str(k);
    }
    throw Error(ErrorKind::ConfigError, "unsupported " + k + " '" + str(k) + "'");
  }

 private:
  const std::map<std::string, std::string>& p_;
};

// -------------------------------------------------------------------- table

struct Table {
  std::vector<std::string> columns;
  std::vector<json> rows;        // one object per row, keys in column order
  std::vector<std::string> tail;  // extra lines written after the rows
};

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void write_table(const Table& t, const std::string& format, std::ostream& out) {
  if (format == "jsonl") {
    for (const auto& r : t.rows) out << r.dump() << '\n';
  } else {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out << (i ? "," : "") << csv_cell(r.contains(t.columns[i]) ? r.at(t.columns[i]) : json(nullptr));
      }
      out << '\n';
    }
  }
  for (const auto& line : t.tail) out << line << '\n';
}

using RF = RationalFunction;
using MQt = GroupMatrix<RationalFunction>;

// ----------------------------------------------------------- width-growth

bool width_growth(const Params& P, Table& t) {
  t.columns = {"k", "target", "lower_bound", "abs_valuation_bound", "word_length", "verified"};
  const long k_min = P.i64("k_min"), k_max = P.i64("k_max"), sign = P.i64("sign");
  if (k_min < 0 || k_max < k_min) throw Error(ErrorKind::ConfigError, "need 0 <= k_min <= k_max");
  if (sign != 1 && sign != -1) throw Error(ErrorKind::ConfigError, "sign must be 1 or -1");
  const auto spec = GeneratorSpec<RF>::valuation_ball(ValuationMap<RF>::t_adic(), P.rational("r"));
  bool ok = true;
  for (long k = k_min; k <= k_max; ++k) {
    const QtAlgebraic alpha(RF::t_power(sign * k));
    const MQt target = MQt::elementary(2, 0, 1, alpha);
    WidthCertificate<RF> cert{target, width_lower_bound(target, spec),
                              factor_E12(alpha, QtAlgebraic(RF::t()), spec)};
    const bool verified = verify_certificate(cert, spec);
    ok = ok && verified;
    t.rows.push_back({{"k", k},
                      {"target", to_text(target)},
                      {"lower_bound", cert.lower_bound},
                      {"abs_valuation_bound", abs_valuation_bound(target, spec)},
                      {"word_length", cert.upper_word->length()},
                      {"verified", verified}});
  }
  return ok;
}

// ------------------------------------------------------------ so2-witness

template <class F>
bool generation_verified(const GroupMatrix<F>& z, const SO2Generation<F>& gen, long lower_bound) {
  if (gen.word.length() != (std::size_t{1} << gen.k)) return false;
  if (static_cast<long>(gen.word.length()) < lower_bound) return false;
  for (const auto& f : gen.word.factors) {
    if (!is_in_S(f, gen.spec)) return false;
  }
  return word_evaluate(gen.word) == z;
}

bool so2_witness(const Params& P, std::uint64_t seed, Table& t) {
  t.columns = {"n", "mode", "lower_bound", "k", "generation_word_length", "verified", "rho_lower", "rho_upper"};
  const std::string mode = P.choice("mode", {"valuation", "galois"});
  const auto n_min = P.u64("n_min"), n_max = P.u64("n_max"), gen_max = P.u64("generate_n_max");
  const auto k_max = static_cast<unsigned>(P.u64("k_max"));
  if (n_max < n_min || n_max > 12) throw Error(ErrorKind::ConfigError, "need n_min <= n_max <= 12");
  bool ok = true;
  for (auto n = n_min; n <= n_max; ++n) {
    json row{{"n", n}, {"mode", mode}};
    const std::uint64_t s = derive_seed(seed, n);
    if (mode == "valuation") {
      ValuationWitness vw = so2_witness_valuation(static_cast<unsigned>(n), s);
      auto spec = GeneratorSpec<RF>::valuation_ball(vw.vmap, Rational(1), GroupTag::SO2);
      const long lb = width_lower_bound(vw.z, spec);
      row["lower_bound"] = lb;
      if (n <= gen_max) {
        auto gen = so2_generate(vw.z, spec, k_max, s);
        const bool v = generation_verified(vw.z, gen, lb);
        ok = ok && v;
        row["k"] = gen.k;
        row["generation_word_length"] = gen.word.length();
        row["verified"] = v;
      }
    } else {
      GaloisWitness gw = so2_witness_galois(static_cast<unsigned>(n));
      auto spec = GeneratorSpec<Rational>::radius_ball(Rational(2));
      const long lb = width_lower_bound(gw.z, spec);
      row["lower_bound"] = lb;
      if (n <= gen_max) {
        auto gen = so2_generate(gw.z, spec, k_max, s);
        const bool v = generation_verified(gw.z, gen, lb);
        ok = ok && v;
        row["k"] = gen.k;
        row["generation_word_length"] = gen.word.length();
        row["verified"] = v;
      }
      row["rho_lower"] = to_text(gw.rho_a.lower);
      row["rho_upper"] = to_text(gw.rho_a.upper);
    }
    t.rows.push_back(std::move(row));
  }
  return ok;
}

// ----------------------------------------------------------- lemma3-rates

bool lemma3_rates(const Params& P, std::uint64_t seed, Table& t) {
  t.columns = {"p", "e", "f", "exact_portion", "d_lower", "empirical_rate", "accepted", "trials", "method",
               "within_3sigma", "at_least_d"};
  const std::string method = P.choice("method", {"auto", "exhaustive", "sampled"});
  auto ps = P.list("p"), es = P.list("e"), fs = P.list("f");
  for (auto* v : {&ps, &es, &fs}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  const auto trials = P.u64("trials"), cap = P.u64("cap");
  bool ok = true;
  std::uint64_t idx = 0;
  for (auto p : ps) {
    for (auto e : es) {
      for (auto f : fs) {
        const std::uint64_t s = derive_seed(seed, idx++);
        if (e < 1 || f < 2) throw Error(ErrorKind::ConfigError, "need e >= 1 and f >= 2");
        auto small = FiniteField::make(p, static_cast<unsigned>(e), derive_seed(s, 0));
        auto big = FiniteField::make(p, static_cast<unsigned>(e * f), derive_seed(s, 1));
        auto emb = finite_field_embed(small, big, derive_seed(s, 2));
        const auto bounds = complement_portion(p, static_cast<unsigned>(e), static_cast<unsigned>(f));
        bool exhaustive = method == "exhaustive";
        if (method == "auto") {
          Integer tuples = 1;
          for (std::uint64_t i = 0; i < e * (f - 1); ++i) tuples *= static_cast<unsigned long>(big.order());
          exhaustive = tuples <= Integer(static_cast<unsigned long>(cap));
        }
        AcceptanceCount c = exhaustive ? complement_acceptance_exhaustive(emb, cap)
                                       : complement_acceptance_sampled(emb, trials, derive_seed(s, 3));
        const Rational rate = c.portion();
        bool within;
        if (exhaustive) {
          within = rate == bounds.exact;
        } else {
          // (rate - q)^2 <= 9 q (1 - q) / n, compared exactly
          const Rational d = rate - bounds.exact;
          within = c.total > 0 &&
                   d * d <= 9 * bounds.exact * (1 - bounds.exact) / Rational(static_cast<unsigned long>(c.total));
        }
        const bool above = rate >= bounds.lower;
        ok = ok && within && above;
        t.rows.push_back({{"p", p},
                          {"e", e},
                          {"f", f},
                          {"exact_portion", to_text(bounds.exact)},
                          {"d_lower", to_text(bounds.lower)},
                          {"empirical_rate", to_text(rate)},
                          {"accepted", c.accepted},
                          {"trials", c.total},
                          {"method", exhaustive ? "exhaustive" : "sampled"},
                          {"within_3sigma", within},
                          {"at_least_d", above}});
      }
    }
  }
  return ok;
}

// ------------------------------------------------------------- bset-build

std::vector<PolySet> family_from(const std::string& spec, std::size_t depth) {
  if (spec == "default") return default_family(depth);
  // monomial:m:n
  if (spec.rfind("monomial:", 0) == 0) {
    const auto rest = spec.substr(9);
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
      const auto m = to_u64("family", rest.substr(0, colon)), n = to_u64("family", rest.substr(colon + 1));
      if (m >= 1 && n >= 1 && m <= 4 && n <= 4) {
        return std::vector<PolySet>(depth, monomial_family(static_cast<unsigned>(m), static_cast<unsigned>(n)));
      }
    }
  }
  throw Error(ErrorKind::ConfigError, "family must be default or monomial:m:n with 1 <= m, n <= 4");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool bset_build(const Params& P, std::uint64_t seed, const std::string& format, Table& t) {
  t.columns = {"level", "b", "f", "trials", "acceptances", "violations", "image_size", "count_bound",
               "field_size", "separating"};
  const std::uint64_t cap = P.u64("cap");
  const auto m_level = static_cast<std::size_t>(P.u64("m_level"));
  BBuildState s;
  if (!P.str("state").empty()) {
    s = bstate_from_json(read_file(P.str("state")));
  } else {
    const auto depth = static_cast<std::size_t>(P.u64("depth"));
    std::vector<unsigned> sched;
    for (auto f : P.list("f_schedule")) sched.push_back(static_cast<unsigned>(f));
    s = corollary4_build(P.u64("p"), family_from(P.str("family"), depth), depth,
                         static_cast<unsigned>(P.u64("e0")), sched, P.u64("budget"), seed);
  }
  const StratificationReport strat = verify_stratification(s, std::nullopt, m_level, cap);
  std::optional<CountingReport> counting;
  if (!s.family.empty()) counting = counting_check(s, s.family.back(), cap);

  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    const BLevel& L = s.levels[i];
    json row{{"level", i},
             {"b", L.b},
             {"f", L.f},
             {"trials", L.stats.trials},
             {"acceptances", L.stats.acceptances},
             {"violations", L.stats.violations}};
    if (counting) {
      const CountingLevel& c = counting->levels[i];
      row["image_size"] = c.image_size;
      row["count_bound"] = c.bound.get_str();
      row["field_size"] = c.field_size.get_str();
      row["separating"] = c.separating;
    }
    t.rows.push_back(std::move(row));
  }
  json sj{{"pass", strat.pass}, {"evaluations", strat.evaluations}, {"violations", strat.violations}};
  json cj = nullptr;
  if (counting) {
    cj = {{"pass", counting->pass},
          {"first_separating", counting->first_separating ? json(*counting->first_separating) : json(nullptr)}};
  }
  const json state = json::parse(bstate_to_json(s));
  if (format == "jsonl") {
    t.tail.push_back(json{{"kind", "stratification"}, {"report", sj}}.dump());
    t.tail.push_back(json{{"kind", "counting"}, {"report", cj}}.dump());
    t.tail.push_back(json{{"kind", "state"}, {"state", state}}.dump());
  } else {
    t.tail.push_back("# stratification=" + sj.dump());
    t.tail.push_back("# counting=" + cj.dump());
    t.tail.push_back("# state=" + state.dump());
  }
  return strat.pass && (!counting || counting->pass);
}

// ------------------------------------------------------------ norm-axioms

void add_report(const std::string& suite, const AxiomReport& rep, Table& t) {
  for (const auto& r : rep.records) {
    std::string inputs, encl;
    for (const auto& x : r.inputs) inputs += (inputs.empty() ? "" : "; ") + x;
    for (const auto& x : r.enclosures) encl += (encl.empty() ? "" : "; ") + x;
    t.rows.push_back({{"suite", suite},
                      {"axiom", r.axiom},
                      {"verdict", r.pass ? "pass" : "fail"},
                      {"inputs", inputs},
                      {"enclosures", encl}});
  }
}

bool norm_axioms(const Params& P, std::uint64_t seed, Table& t) {
  t.columns = {"suite", "axiom", "verdict", "inputs", "enclosures"};
  const std::string which = P.choice("suite", {"all", "valuation", "galois"});
  const auto pairs = static_cast<std::size_t>(P.u64("pairs"));
  const Rational tol = P.rational("tol");
  std::size_t violations = 0;
  if (which != "galois") {
    const auto base = ValuationMap<RF>::t_adic();
    const QtAlgebraic witness(RF::t_power(-1));
    const std::string att = "omega(t^-1) = -1";
    auto tw1 = adjoin_sqrt(TowerNode<RF>::base(), QtAlgebraic(RF::t_power(3))).tower;
    auto tw2 = adjoin_sqrt(tw1, QtAlgebraic(RF(1) - RF::t_power(-4))).tower;
    const std::vector<std::pair<std::string, ValuationMap<RF>>> maps{
        {"t_adic", base},
        {"t_adic_sqrt_t3", extend_to_tower(base, tw1, derive_seed(seed, 1))},
        {"t_adic_sqrt_t3_sqrt_1-t^-4", extend_to_tower(base, tw2, derive_seed(seed, 2))}};
    for (std::size_t i = 0; i < maps.size(); ++i) {
      auto rep = valuation_axiom_suite(maps[i].second, witness, att, derive_seed(seed, 10 + i), pairs);
      violations += rep.violations();
      add_report(maps[i].first, rep, t);
    }
  }
  if (which != "valuation") {
    const auto q = eisenstein_near(Rational(1, 2), Rational(2), Rational(1, 1000), 2);
    const std::string att = "real root in [" + to_text(q.small_lower) + "," + to_text(q.small_upper) + "]";
    auto rep = galois_axiom_suite(eisenstein_small_root(q), att, derive_seed(seed, 20), pairs, tol);
    violations += rep.violations();
    add_report("galois_radius", rep, t);
  }
  return violations == 0;
}

}  // namespace

ExitCode run_experiment(const ExperimentConfig& raw, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  try {
    cfg = resolve(raw);
  } catch (const Error& e) {
    err << "width-lab: " << e.what() << '\n';
    return ExitCode::ConfigError;
  }
  const Params P(cfg);
  Table t;
  std::ostringstream body;
  try {
    bool ok = false;
    if (cfg.subcommand == "width-growth") ok = width_growth(P, t);
    else if (cfg.subcommand == "so2-witness") ok = so2_witness(P, cfg.seed, t);
    else if (cfg.subcommand == "lemma3-rates") ok = lemma3_rates(P, cfg.seed, t);
    else if (cfg.subcommand == "bset-build") ok = bset_build(P, cfg.seed, cfg.format, t);
    else ok = norm_axioms(P, cfg.seed, t);
    out << "# width-lab v" << kWidthLabVersion << " config=" << canonical_json(cfg) << '\n';
    write_table(t, cfg.format, out);
    return ok ? ExitCode::Ok : ExitCode::VerificationFailure;
  } catch (const Error& e) {
    err << "width-lab " << cfg.subcommand << " config=" << canonical_json(cfg) << ": " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::ConfigError:
      case ErrorKind::ParseError:
        return ExitCode::ConfigError;
      case ErrorKind::BudgetExhausted:
      case ErrorKind::CapExceeded:
      case ErrorKind::KMaxExceeded:
        return ExitCode::Exhausted;
      default:
        return ExitCode::VerificationFailure;
    }
  }
}

}  // namespace widthlab
