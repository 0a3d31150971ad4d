// One PASS/FAIL line per acceptance criterion. With arguments, runs only the
// named criteria ("1", "1b", ..., "7"); the exit status is nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "widthlab/bset.hpp"
#include "widthlab/errors.hpp"
#include "widthlab/galois_norm.hpp"
#include "widthlab/harness.hpp"
#include "widthlab/width.hpp"

using namespace widthlab;

namespace {

using RF = RationalFunction;
using MQt = GroupMatrix<RF>;

struct Outcome {
  bool pass = false;
  std::string detail;
};

// pinned limits
constexpr double kC1Seconds = 10, kC2Seconds = 60, kC3Seconds = 120, kC6Seconds = 60;
constexpr std::size_t kAxiomPairs = 1000;
constexpr std::size_t kGrowthWords = 500, kGrowthMaxLen = 16;
constexpr std::uint64_t kSampledTrials = 10000;
const Rational kRhoLow(199, 100), kRhoHigh(201, 100);

GeneratorSpec<RF> t_ball() { return GeneratorSpec<RF>::valuation_ball(ValuationMap<RF>::t_adic(), Rational(1)); }

std::string join(const std::vector<long>& v) {
  std::string s;
  for (long x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

Outcome e12_family(long sign, double seconds_limit, double& elapsed) {
  const auto start = std::chrono::steady_clock::now();
  const auto spec = t_ball();
  std::vector<long> wrong_bound, bounds;
  long bad_words = 0;
  for (long k = 1; k <= 32; ++k) {
    const QtAlgebraic alpha(RF::t_power(sign * k));
    const MQt g = MQt::elementary(2, 0, 1, alpha);
    WidthCertificate<RF> cert{g, width_lower_bound(g, spec), factor_E12(alpha, QtAlgebraic(RF::t()), spec)};
    bounds.push_back(cert.lower_bound);
    if (cert.lower_bound != k) wrong_bound.push_back(k);
    const auto len = static_cast<long>(cert.upper_word->length());
    if (!verify_certificate(cert, spec) || (len != k && len != k + 1)) ++bad_words;
  }
  elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome o;
  o.pass = wrong_bound.empty() && bad_words == 0 && elapsed < seconds_limit;
  std::ostringstream d;
  d << "k=1..32 lower bounds [" << join(bounds) << "], " << wrong_bound.size() << " differ from k, " << bad_words
    << " factorizations unverified or of length outside {k,k+1}";
  o.detail = d.str();
  return o;
}

Outcome criterion1(double& t) { return e12_family(1, kC1Seconds, t); }
Outcome criterion1b(double& t) { return e12_family(-1, kC1Seconds, t); }

Outcome criterion2(double&) {
  std::vector<long> bounds;
  bool ok = true;
  for (unsigned n = 0; n <= 6; ++n) {
    ValuationWitness vw = so2_witness_valuation(n);
    auto spec = GeneratorSpec<RF>::valuation_ball(vw.vmap, Rational(1), GroupTag::SO2);
    const long lb = width_lower_bound(vw.z, spec);
    bounds.push_back(lb);
    ok = ok && lb == (1L << n);
  }
  std::vector<long> ks;
  for (unsigned n = 0; n <= 3; ++n) {
    ValuationWitness vw = so2_witness_valuation(n, n);
    auto spec = GeneratorSpec<RF>::valuation_ball(vw.vmap, Rational(1), GroupTag::SO2);
    auto gen = so2_generate(vw.z, spec, n + 2, n);
    ks.push_back(gen.k);
    bool v = gen.word.length() == (std::size_t{1} << gen.k) && word_evaluate(gen.word) == vw.z;
    for (const auto& f : gen.word.factors) v = v && is_in_S(f, gen.spec);
    ok = ok && v && gen.k <= n + 2;
  }
  return {ok, "n=0..6 lower bounds [" + join(bounds) + "]; n=0..3 generation k [" + join(ks) + "], all verified=" +
                  (ok ? "yes" : "no")};
}

Outcome criterion3(double&) {
  const auto base = ValuationMap<RF>::t_adic();
  auto tw1 = adjoin_sqrt(TowerNode<RF>::base(), QtAlgebraic(RF::t_power(3))).tower;
  auto tw2 = adjoin_sqrt(tw1, QtAlgebraic(RF(1) - RF::t_power(-4))).tower;
  const QtAlgebraic w(RF::t_power(-1));
  std::size_t v_val = 0, records = 0;
  std::uint64_t s = 0;
  for (const auto& vm : {base, extend_to_tower(base, tw1, 1), extend_to_tower(base, tw2, 2)}) {
    auto rep = valuation_axiom_suite(vm, w, "omega(t^-1) = -1", ++s, kAxiomPairs);
    v_val += rep.violations();
    records += rep.records.size();
  }
  const auto q = eisenstein_near(Rational(1, 2), Rational(2), Rational(1, 1000), 2);
  const QAlgebraic root = eisenstein_small_root(q);
  auto grep = galois_axiom_suite(root, "real root in [" + to_text(q.small_lower) + "," + to_text(q.small_upper) + "]",
                                 7, kAxiomPairs);
  const auto rho = galois_radius(root, Rational(1, 1000));
  const bool rho_ok = kRhoLow < rho.lower && rho.upper < kRhoHigh;
  std::ostringstream d;
  d << "valuation suites: " << v_val << " violations in " << records << " records; galois suite: "
    << grep.violations() << " violations in " << grep.records.size() << " records; rho(small root) in ["
    << rho.lower.get_d() << "," << rho.upper.get_d() << "]";
  return {v_val == 0 && grep.violations() == 0 && rho_ok, d.str()};
}

Outcome criterion4(double&) {
  auto v = growth_check_valuation(kGrowthWords, kGrowthMaxLen, 4);
  auto r = growth_check_radius(kGrowthWords, kGrowthMaxLen, 4);
  std::ostringstream d;
  d << "valuation " << v.violations << "/" << v.words << " violations, radius " << r.violations << "/" << r.words
    << " violations";
  return {v.violations == 0 && r.violations == 0 && v.words == kGrowthWords && r.words == kGrowthWords, d.str()};
}

FieldEmbedding embedding(std::uint64_t p, unsigned e, unsigned f, std::uint64_t seed) {
  return finite_field_embed(FiniteField::make(p, e, seed), FiniteField::make(p, e * f, seed + 1), seed + 2);
}

Outcome criterion5(double&) {
  bool ok = true;
  std::ostringstream d;
  for (std::uint64_t p : {2, 3}) {
    auto c = complement_acceptance_exhaustive(embedding(p, 1, 2, 1));
    const auto b = complement_portion(p, 1, 2);
    const bool good = c.portion() == b.exact && c.portion() >= b.lower;
    ok = ok && good;
    d << "p=" << p << " exhaustive " << to_text(c.portion()) << " (d=" << to_text(b.lower) << "); ";
  }
  std::size_t sampled = 0, sampled_ok = 0;
  for (unsigned e = 1; e <= 3; ++e) {
    for (unsigned f = 2; f <= 3; ++f) {
      auto c = complement_acceptance_sampled(embedding(2, e, f, 10 * e + f), kSampledTrials, 100 * e + f);
      const auto b = complement_portion(2, e, f);
      const Rational diff = c.portion() - b.exact;
      const bool good = diff * diff <= 9 * b.exact * (1 - b.exact) / Rational(static_cast<unsigned long>(c.total)) &&
                        c.portion() >= b.lower;
      ++sampled;
      sampled_ok += good;
    }
  }
  ok = ok && sampled == sampled_ok;
  d << sampled_ok << "/" << sampled << " sampled cases within 3 sigma and >= d; ";

  std::size_t positive = 0, succeeded = 0, examined = 0;
  const std::vector<PolySet> families{PolySet{1, 1, {MultiPoly::monomial({1})}},
                                      PolySet{2, 2, {MultiPoly::monomial({1, 1})}}, monomial_family(2, 2)};
  for (std::uint64_t p : {2, 3}) {
    for (unsigned e = 1; e <= 3; ++e) {
      for (unsigned f = 2; f <= 6; ++f) {
        Integer q = 1;
        for (unsigned i = 0; i < e * f; ++i) q *= static_cast<unsigned long>(p);
        if (q > Integer(static_cast<unsigned long>(FiniteField::kTableLimit))) continue;
        auto emb = embedding(p, e, f, 7 * e + f);
        std::vector<FFElem> E;
        FFElem x = 1;
        for (unsigned i = 0; i < e; ++i, x *= p) E.push_back(x);
        for (std::size_t fi = 0; fi < families.size(); ++fi) {
          ++examined;
          const PolySet& P = families[fi];
          std::vector<FFElem> E_big;
          for (FFElem y : E) E_big.push_back(emb.apply(y));
          const auto pe = substitute_set(P, E_big, emb.target());
          const auto bound = lemma3_success_bound(P, pe.polys.size(), e, f, p).coarse;
          if (bound <= 0) continue;
          ++positive;
          const Rational budget_q = 10 / bound;
          auto budget = static_cast<std::uint64_t>(ceil(budget_q).get_ui());
          succeeded += lemma3_search(P, E, emb, budget, 1000 * p + 100 * e + 10 * f + fi).success();
        }
      }
    }
  }
  ok = ok && positive > 0 && positive == succeeded;
  d << succeeded << "/" << positive << " searches with positive bound succeeded within 10/bound (" << examined
    << " parameter sets examined)";
  return {ok, d.str()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion6(double& elapsed) {
  const auto start = std::chrono::steady_clock::now();
  auto s = corollary4_build(2, default_family(2), 2, 3, {2, 3}, 5000, 6);
  auto strat = verify_stratification(s, std::nullopt, 0);
  auto counting = counting_check(s, monomial_family(2, 2));
  elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  auto corrupted = bstate_from_json(read_file(WIDTHLAB_FIXTURES "/corrupted_bstate.json"));
  auto bad = verify_stratification(corrupted, std::nullopt, 0);
  std::ostringstream d;
  d << "levels b=";
  for (const auto& L : s.levels) d << L.b << (&L == &s.levels.back() ? "" : ",");
  d << "; stratification " << (strat.pass ? "passes" : "fails") << " (" << strat.evaluations
    << " evaluations); first separating level "
    << (counting.first_separating ? std::to_string(*counting.first_separating) : "none") << "; corrupted fixture "
    << (bad.pass ? "not detected" : "detected (" + std::to_string(bad.violations.size()) + " violations)");
  const bool ok = s.levels.size() == 3 && strat.pass && counting.pass && counting.first_separating.has_value() &&
                  !bad.pass && elapsed < kC6Seconds;
  return {ok, d.str()};
}

Outcome criterion7(double&) {
  struct Cmd {
    std::string sub, args;
  };
  const std::vector<Cmd> cmds{
      {"width-growth", "--params k_max=12"},
      {"so2-witness", "--params n_max=2"},
      {"lemma3-rates", "--params p=2,3 --params e=1,2 --params f=2,3"},
      {"bset-build", "--format jsonl"},
      {"norm-axioms", "--params pairs=100"},
  };
  std::size_t identical = 0;
  std::string failures;
  for (const auto& c : cmds) {
    std::string outs[2];
    bool ran = true;
    for (int i = 0; i < 2; ++i) {
      const std::string path = std::string(WIDTHLAB_TMPDIR) + "/determinism_" + c.sub + "_" + std::to_string(i);
      const std::string cmd =
          std::string(WIDTHLAB_CLI) + " " + c.sub + " --seed 42 " + c.args + " --out " + path + " 2>/dev/null";
      ran = ran && std::system(cmd.c_str()) == 0;
      outs[i] = read_file(path);
    }
    if (ran && !outs[0].empty() && outs[0] == outs[1]) {
      ++identical;
    } else {
      failures += " " + c.sub;
    }
  }
  return {identical == cmds.size(), std::to_string(identical) + "/" + std::to_string(cmds.size()) +
                                        " subcommands byte-identical across two runs" +
                                        (failures.empty() ? "" : "; differing:" + failures)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome(double&)>>> all{
      {"1", criterion1}, {"1b", criterion1b}, {"2", criterion2}, {"3", criterion3},
      {"4", criterion4}, {"5", criterion5},   {"6", criterion6}, {"7", criterion7}};
  const std::vector<double> limits{kC1Seconds, kC1Seconds, kC2Seconds, kC3Seconds, 0, 0, kC6Seconds, 0};
  std::vector<std::string> wanted(argv + 1, argv + argc);
  bool all_ok = true;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& [name, fn] = all[i];
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    double inner = -1;
    Outcome o;
    try {
      o = fn(inner);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limits[i] > 0 && secs >= limits[i]) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(limits[i])) + " s limit";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", secs);
    std::cout << "criterion " << name << ": " << (o.pass ? "PASS" : "FAIL") << " " << o.detail << " [" << buf
              << " s]" << std::endl;
    all_ok = all_ok && o.pass;
  }
  return all_ok ? 0 : 1;
}
