#ifndef WIDTHLAB_BSET_HPP
#define WIDTHLAB_BSET_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "widthlab/finite_field.hpp"
#include "widthlab/rational.hpp"

namespace widthlab {

/// Sparse polynomial in m variables; coefficients are element codes of
/// whatever field it is evaluated in (prime-field constants share codes
/// across all extensions).
struct MultiPoly {
  std::map<std::vector<unsigned>, FFElem> terms;  // exponent vector -> nonzero coefficient

  unsigned total_degree() const;
  bool is_constant() const;
  FFElem eval(const FiniteField& f, const std::vector<FFElem>& x) const;

  static MultiPoly monomial(std::vector<unsigned> exps, FFElem coeff = 1);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms == b.terms; }
  friend bool operator<(const MultiPoly& a, const MultiPoly& b) { return a.terms < b.terms; }
};

/// "c*X1^2*X2 + ..." with codes for coefficients.
std::string to_text(const MultiPoly& r);

/// Non-constant polynomials over F_p in m variables, total degree <= n_deg.
struct PolySet {
  unsigned m = 1;
  unsigned n_deg = 1;
  std::vector<MultiPoly> polys;

  /// Throws PreconditionViolation when an invariant fails.
  void validate(std::uint64_t p) const;
  std::size_t size() const { return polys.size(); }
};

/// All monic monomials of total degree 1..n_deg in m variables.
PolySet monomial_family(unsigned m, unsigned n_deg);

/// Default staged family: every stage is monomial_family(2, 2).
std::vector<PolySet> default_family(std::size_t depth);

struct SubstitutedSet {
  PolySet base;
  std::vector<FFElem> E;
  std::vector<MultiPoly> polys;  // distinct, non-constant, sorted
};

/// Every way of fixing a subset of the variables to values in E (elements of
/// `field`); constants are dropped and duplicates merged.
SubstitutedSet substitute_set(const PolySet& P, const std::vector<FFElem>& E, const FiniteField& field);

/// e(f-1) elements of the large field whose span is an F_p-complement of the
/// embedded F_{p^e}.
struct ComplementSample {
  std::vector<FFElem> tuple;
};

/// Rank test of the tuple together with the embedded subfield basis.
bool is_complement(const FieldEmbedding& emb, const std::vector<FFElem>& tuple);
std::optional<ComplementSample> sample_complement(const FieldEmbedding& emb, Prng& rng);

struct PortionBounds {
  Rational exact;  // prod_{i=1}^{e(f-1)} (1 - p^-i)
  Rational lower;  // 4^(-1/(p-1)), exact for p = 2, 3, else a certified rational lower bound
};
PortionBounds complement_portion(std::uint64_t p, unsigned e, unsigned f);

struct AcceptanceCount {
  std::uint64_t accepted = 0;
  std::uint64_t total = 0;
  Rational portion() const;
};

/// Every e(f-1)-tuple; CapExceeded beyond `cap` tuples.
AcceptanceCount complement_acceptance_exhaustive(const FieldEmbedding& emb, std::uint64_t cap = 1u << 22);
/// Seeded sampling, trial i drawn from derive_seed(seed, i).
AcceptanceCount complement_acceptance_sampled(const FieldEmbedding& emb, std::uint64_t trials, std::uint64_t seed);

/// |P_E| (e(f-1))^m n / p^{e(f-1)}.
Rational sz_failure_bound(std::size_t pe_size, unsigned e, unsigned f, unsigned n_deg, unsigned m, std::uint64_t p);
inline Rational sz_failure_bound(const SubstitutedSet& pe, unsigned e, unsigned f, std::uint64_t p) {
  return sz_failure_bound(pe.polys.size(), e, f, pe.base.n_deg, pe.base.m, p);
}

struct SuccessBound {
  Rational exact_pe;  // d_lower - |P_E| (e(f-1))^m n / p^{e(f-1)}
  Rational coarse;    // same with (e+1)^m |P| in place of |P_E|
};
SuccessBound lemma3_success_bound(const PolySet& P, std::size_t pe_size, unsigned e, unsigned f, std::uint64_t p);

struct Lemma3Stats {
  std::uint64_t trials = 0;
  std::uint64_t acceptances = 0;  // complement samples
  std::uint64_t violations = 0;   // accepted samples with some r(s) in the subfield
};

struct Lemma3Result {
  std::optional<ComplementSample> sample;
  Lemma3Stats stats;
  bool success() const { return sample.has_value(); }
};

/// Rejection sampling over trials 0..budget-1 with sub-seeds derive_seed(seed, i).
/// E lives in the embedding's source field.
Lemma3Result lemma3_search(const PolySet& P, const std::vector<FFElem>& E, const FieldEmbedding& emb,
                           std::uint64_t budget, std::uint64_t seed);

/// Fraction of uniform points x with r(x) in the subfield of order p^e.
AcceptanceCount subfield_hit_count(const FiniteField& f, const MultiPoly& r, unsigned e, std::uint64_t trials,
                                   std::uint64_t seed);

struct BLevel {
  unsigned b = 1;
  FiniteField field = FiniteField(2, FpPoly{0, 1});
  std::vector<FFElem> B;                 // F_p-basis of this level's field, old elements first
  std::optional<FFElem> image_of_prev;   // embedding of the previous level's generator
  unsigned f = 1;                        // degree over the previous level
  Lemma3Stats stats;
  std::vector<unsigned> f_tried;
};

struct BBuildState {
  std::uint64_t p = 2;
  std::uint64_t seed = 0;
  std::vector<PolySet> family;  // family[i] used from level i to i+1
  std::vector<BLevel> levels;
};

/// Level 0 is the power basis of F_{p^e0}; each later level runs lemma3_search
/// with E = B_i, trying the f values of the schedule in order with `budget`
/// trials each. Throws BudgetExhausted with the per-level history.
BBuildState corollary4_build(std::uint64_t p, const std::vector<PolySet>& family, std::size_t depth, unsigned e0,
                             const std::vector<unsigned>& f_schedule, std::uint64_t budget, std::uint64_t seed);

/// Embedding of level i's field into level j's field (i <= j), composed along the chain.
FFElem embed_up(const BBuildState& s, std::size_t i, std::size_t j, FFElem a);

struct StratificationReport {
  bool pass = true;
  std::uint64_t evaluations = 0;
  std::vector<std::string> violations;
};

/// Checks, in the top field, B_i within B_{i+1}, rank(B_i) = b_i, P(B_m) inside
/// F_{p^{b_m}}, and for i >= m_level that no r in P_{B_i} takes a value in
/// F_{p^{b_i}} on B_{i+1} \ B_i. Without P the stored stage families are used.
/// CapExceeded beyond `cap` evaluations.
StratificationReport verify_stratification(const BBuildState& s, const std::optional<PolySet>& P,
                                           std::size_t m_level, std::uint64_t cap = 50000000);

struct CountingLevel {
  std::size_t level = 0;
  std::uint64_t image_size = 0;  // |P(B_i)|
  Integer bound;                 // |P| b_i^m
  Integer field_size;            // p^{b_i}
  bool within_bound = true;
  bool separating = false;       // bound < field size
};

struct CountingReport {
  std::vector<CountingLevel> levels;
  std::optional<std::size_t> first_separating;
  bool pass = true;  // every level within its bound; separation is reported, not required
};

CountingReport counting_check(const BBuildState& s, const PolySet& P, std::uint64_t cap = 50000000);

std::string bstate_to_json(const BBuildState& s);
/// Throws ParseError on malformed input.
BBuildState bstate_from_json(const std::string& text);

}  // namespace widthlab

#endif  // WIDTHLAB_BSET_HPP
