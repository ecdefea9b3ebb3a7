#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "branegauge/poly.hpp"

namespace branegauge {

// Direct sum of line bundles O(k) on P^n, one twist per summand.
struct Term {
  std::vector<int> twists;

  int size() const { return static_cast<int>(twists.size()); }
  bool empty() const { return twists.empty(); }
  bool operator==(const Term&) const = default;
};

// Sparse matrix of homogeneous polynomials; only nonzero entries are stored.
struct PolyMatrix {
  int rows = 0;
  int cols = 0;
  std::map<std::pair<int, int>, HomogeneousPoly> entries;

  static PolyMatrix zero(int rows, int cols) { return {rows, cols, {}}; }

  void set(int r, int c, const HomogeneousPoly& p);
  void add(int r, int c, const HomogeneousPoly& p);
  const HomogeneousPoly* find(int r, int c) const;

  bool is_zero() const { return entries.empty(); }
  PolyMatrix times(const PolyMatrix& other) const;
  PolyMatrix scaled(const Rational& c) const;

  bool operator==(const PolyMatrix&) const = default;
};

// Bounded complex of direct sums of line bundles. terms[i] sits at position
// lo + i; diffs[i] maps terms[i] -> terms[i+1] and there are terms.size()-1
// of them (none for a single-position complex). Entry (j, i) of a
// differential must be homogeneous of degree
// target_twist[j] - source_twist[i], or zero.
struct BraneComplex {
  int n = 1;
  int lo = 0;
  std::vector<Term> terms;
  std::vector<PolyMatrix> diffs;
  std::string label;

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  bool empty_complex() const { return terms.empty(); }
  const Term& term(int p) const;
  const PolyMatrix* diff(int p) const;  // nullptr when p or p+1 is outside

  // Drops empty boundary positions (label preserved).
  void trim();

  bool operator==(const BraneComplex& other) const;
};

BraneComplex line_bundle(int n, int k, int position = 0);

struct ValidationIssue {
  int p = 0;
  int row = 0;
  int col = 0;
  std::string message;
};

struct ValidationReport {
  std::vector<std::string> shape;           // malformed dimensions
  std::vector<ValidationIssue> homogeneity;  // wrong entry degrees
  std::vector<ValidationIssue> square;       // d . d != 0 locations
  bool twists_in_range = true;               // all twists within [-n, 0]

  bool valid() const {
    return shape.empty() && homogeneity.empty() && square.empty();
  }
};

ValidationReport validate(const BraneComplex& c);
void require_valid(const BraneComplex& c, const std::string& who);

// [l]-shift: the result at position p is the input at position p + l, and
// every differential picks up the sign (-1)^l.
BraneComplex shift(const BraneComplex& c, int l);

// Tensoring by O(k): all twists move by k, differentials unchanged.
BraneComplex twist_complex(const BraneComplex& c, int k);

BraneComplex direct_sum(const BraneComplex& a, const BraneComplex& b);

// Degree-0 map of complexes; blocks[p] : source^p -> target^p.
struct ChainMap {
  BraneComplex source;
  BraneComplex target;
  std::map<int, PolyMatrix> blocks;

  const PolyMatrix* block(int p) const;
};

// Checks block shapes, entry homogeneity and d_target h = h d_source.
bool chain_map_commutes(const ChainMap& h, std::string* why = nullptr);

// Cone(h)^p = source^{p+1} (+) target^p with differential
// [[-d_src, 0], [h, d_tgt]]; source summands come first.
BraneComplex cone(const ChainMap& h);

// Hom complex: position m holds Hom(A^p, B^{p+m}) over all p, each summand a
// line bundle of twist (target twist - source twist). Summands are ordered by
// (p, source index, target index). The differential post-composes with d_B
// and pre-composes with d_A carrying the sign (-1)^{m+1}.
struct HomSummand {
  int p;    // source position in A
  int src;  // summand index in A^p
  int tgt;  // summand index in B^{p+m}
};

struct HomComplexData {
  BraneComplex cx;
  std::map<int, std::vector<HomSummand>> summands;  // keyed by position m

  int index_of(int m, int p, int src, int tgt) const;
};

HomComplexData hom_complex(const BraneComplex& a, const BraneComplex& b);

// Replaces each line-bundle summand O(k) at position t by the length-p
// locally free resolution of Omega^p(k) built from the Euler sequence:
// level j (0..p) contributes O(k - (p - j)) ^ C(n+1, p-j) at position t + j,
// slots indexed by subsets S of {0..n} with |S| = p - j. The level-raising
// part contracts a slot against the coordinates, the brane part applies the
// original differential with sign (-1)^j.
struct OmegaSummand {
  int t;     // originating position in the input complex
  int src;   // summand index in the input term
  int level; // Koszul level j
  std::vector<int> subset;  // sorted slot subset, |subset| = p - level
};

struct OmegaReplacementData {
  BraneComplex cx;
  int form_degree = 1;
  std::map<int, std::vector<OmegaSummand>> summands;  // keyed by position

  int index_of(int m, int t, int src, int level,
               const std::vector<int>& subset) const;
};

OmegaReplacementData omega_replacement(const BraneComplex& c, int p);

// {O(-n), ..., O(-1), O} as single-term complexes at position 0.
std::vector<BraneComplex> exceptional_generators(int n);

// Human-readable one-line summary: the label when set, otherwise the terms
// joined left to right with the starting position.
std::string describe(const BraneComplex& c);

// Sum of twists of one term (degree of its determinant line).
long long first_chern(const Term& t);

// Per-position sum of twists (degree of the determinant of each term).
std::map<int, long long> first_chern_by_position(const BraneComplex& c);

// Deterministic pseudo-randomness for brane generation. mt19937_64 plus
// modulo reduction, so streams are identical across platforms.
struct SeededRng {
  std::mt19937_64 eng;

  explicit SeededRng(std::uint64_t seed) : eng(seed) {}
  std::uint64_t raw() { return eng(); }
  int uniform(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(raw() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

// Random chain map between valid complexes: homogeneous entries with small
// integer coefficients, at most two monomials each, retried until the chain
// condition holds (zero map as a last resort).
ChainMap random_chain_map(const BraneComplex& a, const BraneComplex& b,
                          SeededRng& rng);

// Seeded brane built from the generating line bundles by iterated shifts and
// mapping cones; depth counts the cone stages. All twists stay in [-n, 0].
BraneComplex random_brane(int n, int depth, std::uint64_t seed);

}  // namespace branegauge
