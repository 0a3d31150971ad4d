#include "widthlab/bset.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "widthlab/errors.hpp"

namespace widthlab {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- MultiPoly

unsigned MultiPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms) {
    unsigned s = 0;
    for (unsigned x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

bool MultiPoly::is_constant() const { return total_degree() == 0; }

FFElem MultiPoly::eval(const FiniteField& f, const std::vector<FFElem>& x) const {
  FFElem acc = 0;
  for (const auto& [e, c] : terms) {
    FFElem t = c;
    for (std::size_t i = 0; i < e.size() && t != 0; ++i) {
      if (e[i]) t = f.mul(t, f.pow(x[i], e[i]));
    }
    acc = f.add(acc, t);
  }
  return acc;
}

MultiPoly MultiPoly::monomial(std::vector<unsigned> exps, FFElem coeff) {
  MultiPoly r;
  if (coeff != 0) r.terms.emplace(std::move(exps), coeff);
  return r;
}

std::string to_text(const MultiPoly& r) {
  if (r.terms.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : r.terms) {
    if (!s.empty()) s += " + ";
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "X" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      s += std::to_string(c);
    } else {
      s += c == 1 ? mono : std::to_string(c) + "*" + mono;
    }
  }
  return s;
}

void PolySet::validate(std::uint64_t p) const {
  for (const auto& r : polys) {
    if (r.is_constant()) throw Error(ErrorKind::PreconditionViolation, "constant polynomial " + to_text(r));
    if (r.total_degree() > n_deg) throw Error(ErrorKind::PreconditionViolation, "degree above n in " + to_text(r));
    for (const auto& [e, c] : r.terms) {
      if (e.size() != m) throw Error(ErrorKind::PreconditionViolation, "wrong variable count in " + to_text(r));
      if (c >= p) throw Error(ErrorKind::PreconditionViolation, "coefficient outside F_p in " + to_text(r));
    }
  }
}

PolySet monomial_family(unsigned m, unsigned n_deg) {
  PolySet P{m, n_deg, {}};
  std::vector<unsigned> e(m, 0);
  // odometer over exponent vectors with entries <= n_deg
  for (;;) {
    unsigned s = 0;
    for (unsigned x : e) s += x;
    if (s >= 1 && s <= n_deg) P.polys.push_back(MultiPoly::monomial(e));
    std::size_t i = 0;
    while (i < m && e[i] == n_deg) e[i++] = 0;
    if (i == m) break;
    ++e[i];
  }
  std::sort(P.polys.begin(), P.polys.end());
  return P;
}

std::vector<PolySet> default_family(std::size_t depth) { return std::vector<PolySet>(depth, monomial_family(2, 2)); }

// ------------------------------------------------------------- substitution

SubstitutedSet substitute_set(const PolySet& P, const std::vector<FFElem>& E, const FiniteField& field) {
  SubstitutedSet out{P, E, {}};
  std::vector<FFElem> values = E;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::set<MultiPoly> seen;
  const unsigned m = P.m;
  for (const auto& r : P.polys) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      std::vector<unsigned> vars;
      for (unsigned i = 0; i < m; ++i) {
        if (mask >> i & 1) vars.push_back(i);
      }
      if (!vars.empty() && values.empty()) continue;
      std::vector<std::size_t> pick(vars.size(), 0);
      for (;;) {
        MultiPoly s;
        for (const auto& [e, c] : r.terms) {
          std::vector<unsigned> ne = e;
          FFElem coeff = c;
          for (std::size_t k = 0; k < vars.size(); ++k) {
            coeff = field.mul(coeff, field.pow(values[pick[k]], e[vars[k]]));
            ne[vars[k]] = 0;
          }
          FFElem& slot = s.terms[ne];
          slot = field.add(slot, coeff);
          if (slot == 0) s.terms.erase(ne);
        }
        if (!s.is_constant()) seen.insert(std::move(s));
        std::size_t k = 0;
        while (k < pick.size() && pick[k] + 1 == values.size()) pick[k++] = 0;
        if (k == pick.size()) break;
        ++pick[k];
      }
    }
  }
  out.polys.assign(seen.begin(), seen.end());
  return out;
}

// --------------------------------------------------------------- complement

bool is_complement(const FieldEmbedding& emb, const std::vector<FFElem>& tuple) {
  const unsigned e = emb.source().degree(), n = emb.target().degree();
  if (tuple.size() != n - e) return false;
  std::vector<FFElem> all = emb.image_basis();
  all.insert(all.end(), tuple.begin(), tuple.end());
  return fp_rank(emb.target(), all) == n;
}

std::optional<ComplementSample> sample_complement(const FieldEmbedding& emb, Prng& rng) {
  const FiniteField& big = emb.target();
  ComplementSample s;
  s.tuple.resize(big.degree() - emb.source().degree());
  for (auto& x : s.tuple) x = big.random(rng);
  if (!is_complement(emb, s.tuple)) return std::nullopt;
  return s;
}

Rational AcceptanceCount::portion() const {
  if (total == 0) return Rational(0);
  Rational r(Integer(static_cast<unsigned long>(accepted)), Integer(static_cast<unsigned long>(total)));
  r.canonicalize();
  return r;
}

PortionBounds complement_portion(std::uint64_t p, unsigned e, unsigned f) {
  if (e < 1 || f < 1) throw Error(ErrorKind::PreconditionViolation, "e and f must be positive");
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  PortionBounds b;
  b.exact = 1;
  Rational pinv(Integer(1), Integer(static_cast<unsigned long>(p)));
  Rational term = pinv;
  for (unsigned i = 1; i <= e * (f - 1); ++i) {
    b.exact *= 1 - term;
    term *= pinv;
  }
  if (p == 2) {
    b.lower = Rational(1, 4);
  } else if (p == 3) {
    b.lower = Rational(1, 2);
  } else {
    b.lower = 1 / root_upper(Rational(4), p - 1, 64);
  }
  if (b.exact < b.lower) throw Error(ErrorKind::PreconditionViolation, "complement portion below its lower bound");
  return b;
}

AcceptanceCount complement_acceptance_exhaustive(const FieldEmbedding& emb, std::uint64_t cap) {
  const FiniteField& big = emb.target();
  const unsigned k = big.degree() - emb.source().degree();
  Integer total = pow(Rational(Integer(static_cast<unsigned long>(big.order()))), static_cast<unsigned long>(k)).get_num();
  if (total > Integer(static_cast<unsigned long>(cap))) {
    throw Error(ErrorKind::CapExceeded, "too many tuples for exhaustive enumeration");
  }
  AcceptanceCount c;
  std::vector<FFElem> t(k, 0);
  for (;;) {
    ++c.total;
    if (is_complement(emb, t)) ++c.accepted;
    std::size_t i = 0;
    while (i < k && t[i] + 1 == big.order()) t[i++] = 0;
    if (i == k) break;
    ++t[i];
  }
  return c;
}

AcceptanceCount complement_acceptance_sampled(const FieldEmbedding& emb, std::uint64_t trials, std::uint64_t seed) {
  AcceptanceCount c;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Prng rng(derive_seed(seed, i));
    ++c.total;
    if (sample_complement(emb, rng)) ++c.accepted;
  }
  return c;
}

Rational sz_failure_bound(std::size_t pe_size, unsigned e, unsigned f, unsigned n_deg, unsigned m, std::uint64_t p) {
  if (pe_size == 0) return Rational(0);
  const unsigned k = e * (f - 1);
  Rational num = Rational(static_cast<unsigned long>(pe_size)) * pow(Rational(k), static_cast<unsigned long>(m)) *
                 Rational(n_deg);
  return num / pow(Rational(Integer(static_cast<unsigned long>(p))), static_cast<unsigned long>(k));
}

SuccessBound lemma3_success_bound(const PolySet& P, std::size_t pe_size, unsigned e, unsigned f, std::uint64_t p) {
  const Rational d = complement_portion(p, e, f).lower;
  const Rational coarse_size =
      pow(Rational(e + 1), static_cast<unsigned long>(P.m)) * Rational(static_cast<unsigned long>(P.size()));
  const unsigned k = e * (f - 1);
  const Rational tail = pow(Rational(k), static_cast<unsigned long>(P.m)) * Rational(P.n_deg) /
                        pow(Rational(Integer(static_cast<unsigned long>(p))), static_cast<unsigned long>(k));
  SuccessBound b;
  b.exact_pe = d - sz_failure_bound(pe_size, e, f, P.n_deg, P.m, p);
  b.coarse = d - coarse_size * tail;
  return b;
}

// ------------------------------------------------------------------ search

namespace {

// Some r in P_E maps an m-tuple from `pool` into the subfield of order p^e.
bool hits_subfield(const FiniteField& big, const std::vector<MultiPoly>& pe, unsigned m, unsigned e,
                   const std::vector<FFElem>& pool, std::uint64_t* evaluations) {
  if (pool.empty()) return false;
  std::vector<std::size_t> idx(m, 0);
  std::vector<FFElem> x(m);
  for (;;) {
    for (unsigned i = 0; i < m; ++i) x[i] = pool[idx[i]];
    for (const auto& r : pe) {
      if (evaluations) ++*evaluations;
      if (big.in_subfield(r.eval(big, x), e)) return true;
    }
    std::size_t k = 0;
    while (k < m && idx[k] + 1 == pool.size()) idx[k++] = 0;
    if (k == m) return false;
    ++idx[k];
  }
}

}  // namespace

Lemma3Result lemma3_search(const PolySet& P, const std::vector<FFElem>& E, const FieldEmbedding& emb,
                           std::uint64_t budget, std::uint64_t seed) {
  P.validate(emb.source().p());
  const FiniteField& big = emb.target();
  const unsigned e = emb.source().degree();
  std::vector<FFElem> E_big;
  for (FFElem x : E) E_big.push_back(emb.apply(x));
  const SubstitutedSet pe = substitute_set(P, E_big, big);
  Lemma3Result res;
  for (std::uint64_t i = 0; i < budget; ++i) {
    Prng rng(derive_seed(seed, i));
    ++res.stats.trials;
    auto sample = sample_complement(emb, rng);
    if (!sample) continue;
    ++res.stats.acceptances;
    if (hits_subfield(big, pe.polys, P.m, e, sample->tuple, nullptr)) {
      ++res.stats.violations;
      continue;
    }
    res.sample = std::move(sample);
    break;
  }
  return res;
}

AcceptanceCount subfield_hit_count(const FiniteField& f, const MultiPoly& r, unsigned e, std::uint64_t trials,
                                   std::uint64_t seed) {
  std::size_t m = 0;
  for (const auto& [ex, c] : r.terms) m = std::max(m, ex.size());
  AcceptanceCount c;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Prng rng(derive_seed(seed, i));
    std::vector<FFElem> x(m);
    for (auto& v : x) v = f.random(rng);
    ++c.total;
    if (f.in_subfield(r.eval(f, x), e)) ++c.accepted;
  }
  return c;
}

// ------------------------------------------------------------------- build

namespace {

std::string history_text(const BBuildState& s, const std::vector<unsigned>& tried, const Lemma3Stats& last) {
  std::string h;
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    const auto& L = s.levels[i];
    h += "level " + std::to_string(i) + ": b=" + std::to_string(L.b) + " trials=" + std::to_string(L.stats.trials) +
         " acceptances=" + std::to_string(L.stats.acceptances) + " violations=" + std::to_string(L.stats.violations) +
         "; ";
  }
  h += "failed level " + std::to_string(s.levels.size()) + ": f tried";
  for (unsigned f : tried) h += " " + std::to_string(f);
  h += ", trials=" + std::to_string(last.trials) + " acceptances=" + std::to_string(last.acceptances) +
       " violations=" + std::to_string(last.violations);
  return h;
}

std::vector<FieldEmbedding> chain_embeddings(const BBuildState& s) {
  std::vector<FieldEmbedding> out;
  for (std::size_t k = 1; k < s.levels.size(); ++k) {
    if (!s.levels[k].image_of_prev) throw Error(ErrorKind::PreconditionViolation, "missing embedding");
    out.emplace_back(s.levels[k - 1].field, s.levels[k].field, *s.levels[k].image_of_prev);
  }
  return out;
}

FFElem lift(const std::vector<FieldEmbedding>& chain, std::size_t i, std::size_t j, FFElem a) {
  for (std::size_t k = i; k < j; ++k) a = chain[k].apply(a);
  return a;
}

}  // namespace

BBuildState corollary4_build(std::uint64_t p, const std::vector<PolySet>& family, std::size_t depth, unsigned e0,
                             const std::vector<unsigned>& f_schedule, std::uint64_t budget, std::uint64_t seed) {
  if (depth < 1) throw Error(ErrorKind::PreconditionViolation, "depth must be at least 1");
  if (family.size() < depth) throw Error(ErrorKind::PreconditionViolation, "family has fewer stages than depth");
  for (const auto& P : family) P.validate(p);
  BBuildState s;
  s.p = p;
  s.seed = seed;
  s.family.assign(family.begin(), family.begin() + static_cast<std::ptrdiff_t>(depth));
  BLevel base;
  base.b = e0;
  base.field = FiniteField::make(p, e0, derive_seed(seed, 0));
  FFElem x = 1;
  for (unsigned i = 0; i < e0; ++i) {
    base.B.push_back(x);
    x *= p;  // code of X^(i+1)
  }
  s.levels.push_back(std::move(base));
  for (std::size_t i = 0; i < depth; ++i) {
    const BLevel& cur = s.levels.back();
    std::vector<unsigned> tried;
    Lemma3Stats total;
    bool done = false;
    for (unsigned f : f_schedule) {
      if (f < 2) continue;
      const unsigned b = cur.b * f;
      tried.push_back(f);
      FiniteField big = FiniteField::make(p, b, derive_seed(seed, 1000 * (i + 1) + f));
      if (!big.has_tables()) continue;  // too large for the embedding search
      FieldEmbedding emb = finite_field_embed(cur.field, big, derive_seed(seed, 2000 * (i + 1) + f));
      Lemma3Result r = lemma3_search(s.family[i], cur.B, emb, budget, derive_seed(seed, 3000 * (i + 1) + f));
      total.trials += r.stats.trials;
      total.acceptances += r.stats.acceptances;
      total.violations += r.stats.violations;
      if (!r.success()) continue;
      BLevel next;
      next.b = b;
      next.field = big;
      for (FFElem y : cur.B) next.B.push_back(emb.apply(y));
      next.B.insert(next.B.end(), r.sample->tuple.begin(), r.sample->tuple.end());
      next.image_of_prev = emb.image_of_generator();
      next.f = f;
      next.stats = total;
      next.f_tried = tried;
      s.levels.push_back(std::move(next));
      done = true;
      break;
    }
    if (!done) throw Error(ErrorKind::BudgetExhausted, history_text(s, tried, total));
  }
  return s;
}

FFElem embed_up(const BBuildState& s, std::size_t i, std::size_t j, FFElem a) {
  return lift(chain_embeddings(s), i, j, a);
}

StratificationReport verify_stratification(const BBuildState& s, const std::optional<PolySet>& P,
                                           std::size_t m_level, std::uint64_t cap) {
  StratificationReport rep;
  if (s.levels.empty()) return rep;
  const std::size_t top = s.levels.size() - 1;
  const FiniteField& F = s.levels[top].field;
  const auto chain = chain_embeddings(s);
  auto fail = [&](std::string msg) {
    rep.pass = false;
    rep.violations.push_back(std::move(msg));
  };

  std::vector<std::vector<FFElem>> Btop(s.levels.size());
  for (std::size_t i = 0; i <= top; ++i) {
    const BLevel& L = s.levels[i];
    if (L.B.size() != L.b || fp_rank(L.field, L.B) != L.b) fail("level " + std::to_string(i) + ": B is not a basis");
    for (FFElem x : L.B) Btop[i].push_back(lift(chain, i, top, x));
    if (i > 0) {
      std::set<FFElem> here(Btop[i].begin(), Btop[i].end());
      for (FFElem x : Btop[i - 1]) {
        if (!here.count(x)) fail("level " + std::to_string(i) + ": B_" + std::to_string(i - 1) + " not contained");
      }
    }
  }
  auto stage = [&](std::size_t i) -> const PolySet* {
    if (P) return &*P;
    return i < s.family.size() ? &s.family[i] : nullptr;
  };
  auto count = [&](std::uint64_t n) {
    rep.evaluations += n;
    if (rep.evaluations > cap) throw Error(ErrorKind::CapExceeded, "stratification check exceeds evaluation cap");
  };

  // P(B_m) stays inside F_{p^{b_m}}
  if (m_level <= top) {
    if (const PolySet* Pm = stage(m_level)) {
      const unsigned bm = s.levels[m_level].b;
      const auto& pool = Btop[m_level];
      std::vector<std::size_t> idx(Pm->m, 0);
      std::vector<FFElem> x(Pm->m);
      for (bool more = !pool.empty() && !Pm->polys.empty(); more;) {
        for (unsigned k = 0; k < Pm->m; ++k) x[k] = pool[idx[k]];
        count(Pm->polys.size());
        for (const auto& r : Pm->polys) {
          if (!F.in_subfield(r.eval(F, x), bm)) fail("P(B_m) leaves F_p^" + std::to_string(bm) + " at " + to_text(r));
        }
        std::size_t k = 0;
        while (k < Pm->m && idx[k] + 1 == pool.size()) idx[k++] = 0;
        more = k < Pm->m;
        if (more) ++idx[k];
      }
    }
  }

  for (std::size_t i = m_level; i < top; ++i) {
    const PolySet* Pi = stage(i);
    if (!Pi || Pi->polys.empty()) continue;
    const unsigned bi = s.levels[i].b;
    const SubstitutedSet pe = substitute_set(*Pi, Btop[i], F);
    std::set<FFElem> old(Btop[i].begin(), Btop[i].end());
    std::vector<FFElem> fresh;
    for (FFElem x : Btop[i + 1]) {
      if (!old.count(x)) fresh.push_back(x);
    }
    if (fresh.empty()) continue;
    std::vector<std::size_t> idx(Pi->m, 0);
    std::vector<FFElem> x(Pi->m);
    for (;;) {
      for (unsigned k = 0; k < Pi->m; ++k) x[k] = fresh[idx[k]];
      count(pe.polys.size());
      for (const auto& r : pe.polys) {
        if (F.in_subfield(r.eval(F, x), bi)) {
          std::string at;
          for (FFElem v : x) at += (at.empty() ? "" : ",") + to_text(F, v);
          fail("level " + std::to_string(i) + ": " + to_text(r) + " at (" + at + ") lies in F_p^" + std::to_string(bi));
        }
      }
      std::size_t k = 0;
      while (k < Pi->m && idx[k] + 1 == fresh.size()) idx[k++] = 0;
      if (k == Pi->m) break;
      ++idx[k];
    }
  }
  return rep;
}

CountingReport counting_check(const BBuildState& s, const PolySet& P, std::uint64_t cap) {
  CountingReport rep;
  std::uint64_t evaluations = 0;
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    const BLevel& L = s.levels[i];
    CountingLevel c;
    c.level = i;
    std::set<FFElem> image;
    if (!P.polys.empty() && !L.B.empty()) {
      std::vector<std::size_t> idx(P.m, 0);
      std::vector<FFElem> x(P.m);
      for (;;) {
        for (unsigned k = 0; k < P.m; ++k) x[k] = L.B[idx[k]];
        evaluations += P.polys.size();
        if (evaluations > cap) throw Error(ErrorKind::CapExceeded, "counting check exceeds evaluation cap");
        for (const auto& r : P.polys) image.insert(r.eval(L.field, x));
        std::size_t k = 0;
        while (k < P.m && idx[k] + 1 == L.B.size()) idx[k++] = 0;
        if (k == P.m) break;
        ++idx[k];
      }
    }
    c.image_size = image.size();
    c.bound = Integer(static_cast<unsigned long>(P.size()));
    for (unsigned k = 0; k < P.m; ++k) c.bound *= L.b;
    c.field_size = Integer(static_cast<unsigned long>(L.field.order()));
    c.within_bound = Integer(static_cast<unsigned long>(c.image_size)) <= c.bound;
    c.separating = c.bound < c.field_size;
    if (!c.within_bound) rep.pass = false;
    if (c.separating && !rep.first_separating) rep.first_separating = i;
    rep.levels.push_back(std::move(c));
  }
  return rep;
}

// -------------------------------------------------------------------- JSON

namespace {

json poly_json(const MultiPoly& r) {
  json terms = json::array();
  for (const auto& [e, c] : r.terms) terms.push_back({{"exp", e}, {"coef", c}});
  return terms;
}

FFElem element_from_text(const FiniteField& f, const std::string& text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw Error(ErrorKind::ParseError, "bad element text '" + text + "'");
  }
  std::vector<std::uint64_t> d;
  std::string body = text.substr(1, text.size() - 2);
  std::size_t pos = 0;
  while (pos <= body.size() && !body.empty()) {
    std::size_t comma = body.find(',', pos);
    d.push_back(std::stoull(body.substr(pos, comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (d.size() != f.degree()) throw Error(ErrorKind::ParseError, "element '" + text + "' has the wrong length");
  for (auto c : d) {
    if (c >= f.p()) throw Error(ErrorKind::ParseError, "digit out of range in '" + text + "'");
  }
  return f.from_digits(d);
}

json stats_json(const Lemma3Stats& st) {
  return {{"trials", st.trials}, {"acceptances", st.acceptances}, {"violations", st.violations}};
}

}  // namespace

std::string bstate_to_json(const BBuildState& s) {
  json j;
  j["p"] = s.p;
  j["seed"] = s.seed;
  json fam = json::array();
  for (const auto& P : s.family) {
    json polys = json::array();
    for (const auto& r : P.polys) polys.push_back(poly_json(r));
    fam.push_back({{"m", P.m}, {"n_deg", P.n_deg}, {"polys", polys}});
  }
  j["family"] = fam;
  json levels = json::array();
  for (const auto& L : s.levels) {
    json l;
    l["b"] = L.b;
    l["f"] = L.f;
    l["modulus"] = L.field.modulus();
    l["embedding"] = L.image_of_prev ? json(to_text(L.field, *L.image_of_prev)) : json(nullptr);
    json B = json::array();
    for (FFElem x : L.B) B.push_back(to_text(L.field, x));
    l["B"] = B;
    l["stats"] = stats_json(L.stats);
    l["f_tried"] = L.f_tried;
    levels.push_back(l);
  }
  j["levels"] = levels;
  return j.dump();
}

BBuildState bstate_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    BBuildState s;
    s.p = j.at("p").get<std::uint64_t>();
    s.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& fj : j.at("family")) {
      PolySet P;
      P.m = fj.at("m").get<unsigned>();
      P.n_deg = fj.at("n_deg").get<unsigned>();
      for (const auto& pj : fj.at("polys")) {
        MultiPoly r;
        for (const auto& t : pj) r.terms[t.at("exp").get<std::vector<unsigned>>()] = t.at("coef").get<FFElem>();
        P.polys.push_back(std::move(r));
      }
      P.validate(s.p);
      s.family.push_back(std::move(P));
    }
    for (const auto& lj : j.at("levels")) {
      BLevel L;
      L.b = lj.at("b").get<unsigned>();
      L.f = lj.at("f").get<unsigned>();
      L.field = FiniteField(s.p, lj.at("modulus").get<FpPoly>());
      if (L.field.degree() != L.b) throw Error(ErrorKind::ParseError, "modulus degree differs from b");
      if (!lj.at("embedding").is_null()) L.image_of_prev = element_from_text(L.field, lj.at("embedding").get<std::string>());
      for (const auto& x : lj.at("B")) L.B.push_back(element_from_text(L.field, x.get<std::string>()));
      const auto& st = lj.at("stats");
      L.stats = {st.at("trials").get<std::uint64_t>(), st.at("acceptances").get<std::uint64_t>(),
                 st.at("violations").get<std::uint64_t>()};
      L.f_tried = lj.at("f_tried").get<std::vector<unsigned>>();
      s.levels.push_back(std::move(L));
    }
    return s;
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::ParseError, ex.what());
  } catch (const std::logic_error& ex) {
    throw Error(ErrorKind::ParseError, ex.what());
  }
}

}  // namespace widthlab
