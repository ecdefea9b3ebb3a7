// Acceptance harness: one pass/fail line per criterion, exact arithmetic
// throughout, deterministic seeds. Exit code 0 only when every criterion
// passes.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "branegauge/cech.hpp"
#include "branegauge/complexes.hpp"
#include "branegauge/ext.hpp"
#include "branegauge/gauge.hpp"

using namespace branegauge;

namespace {

struct Criterion {
  bool pass = true;
  std::string note;  // short failure summary or extra stats

  void fail(const std::string& why) {
    pass = false;
    if (note.empty()) note = why;
  }
};

long long dim_at(const std::map<int, long long>& dims, int k) {
  auto it = dims.find(k);
  return it == dims.end() ? 0 : it->second;
}

long long chi(const std::map<int, long long>& dims) {
  long long total = 0;
  for (const auto& [k, d] : dims) total += (k % 2 == 0 ? d : -d);
  return total;
}

int sign_of_position(int p) { return ((p % 2) + 2) % 2 == 0 ? 1 : -1; }

// ---------------------------------------------------------------------------
// Criterion 1: engine vs closed form on the line-bundle cohomology grid.
Criterion criterion1() {
  Criterion c;
  for (int n = 1; n <= 3 && c.pass; ++n) {
    for (int m = -8; m <= 8 && c.pass; ++m) {
      auto res = hypercohomology(line_bundle(n, m));
      for (int q = 0; q <= n; ++q) {
        long long engine = dim_at(res.dims, q);
        long long closed = line_bundle_cohomology(n, m, q);
        if (engine != closed) {
          std::ostringstream why;
          why << "n=" << n << " m=" << m << " q=" << q << ": engine " << engine
              << " vs closed form " << closed;
          c.fail(why.str());
          break;
        }
      }
      for (const auto& [q, d] : res.dims)
        if ((q < 0 || q > n) && d != 0)
          c.fail("unexpected dimension outside [0, n]");
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 2: no global one-forms or two-forms, via the replacement complex.
Criterion criterion2() {
  Criterion c;
  for (int n = 2; n <= 3; ++n) {
    for (int p = 1; p <= 2; ++p) {
      auto rep = omega_replacement(line_bundle(n, 0), p);
      auto res = hypercohomology(rep.cx);
      if (dim_at(res.dims, 0) != 0) {
        std::ostringstream why;
        why << "H^0 of the degree-" << p << " form sheaf on P^" << n
            << " is " << dim_at(res.dims, 0) << ", expected 0";
        c.fail(why.str());
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 3: closed-form twisted-form dimensions vs the engine.
Criterion criterion3() {
  Criterion c;
  for (int n = 1; n <= 3 && c.pass; ++n) {
    for (int p = 1; p <= n && c.pass; ++p) {
      for (int k = -5; k <= 5 && c.pass; ++k) {
        auto rep = omega_replacement(line_bundle(n, k), p);
        auto res = hypercohomology(rep.cx);
        for (int q = 0; q <= n; ++q) {
          long long engine = dim_at(res.dims, q);
          long long closed = bott_dim(n, p, k, q);
          if (engine != closed) {
            std::ostringstream why;
            why << "n=" << n << " p=" << p << " k=" << k << " q=" << q
                << ": engine " << engine << " vs closed form " << closed;
            c.fail(why.str());
            break;
          }
        }
        for (const auto& [q, d] : res.dims)
          if ((q < 0 || q > n) && d != 0)
            c.fail("unexpected dimension outside [0, n]");
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 4: line bundles admit a field exactly at twist zero.
Criterion criterion4() {
  Criterion c;
  for (int n = 1; n <= 3 && c.pass; ++n) {
    for (int k = -n; k <= n && c.pass; ++k) {
      auto dec = gauge_exists(line_bundle(n, k));
      if (dec.exists != (k == 0)) {
        std::ostringstream why;
        why << "O(" << k << ") on P^" << n << ": exists="
            << (dec.exists ? "true" : "false");
        c.fail(why.str());
      }
      if (k == 0 && dec.space_dim != 0) {
        std::ostringstream why;
        why << "structure sheaf on P^" << n << ": space_dim=" << dec.space_dim;
        c.fail(why.str());
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 5: seeded constant complexes of trivial bundles.

// Exact integer staircase complex conjugated by unimodular matrices:
// d_p = E_{p+1} J_p E_p^{-1} with J_{p+1} J_p = 0 by rank bookkeeping, so
// d^2 = 0 holds exactly while the matrices look unstructured.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<long long>> a;

  IntMatrix(int r, int c) : rows(r), cols(c), a(r, std::vector<long long>(c, 0)) {}

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.a[i][i] = 1;
    return m;
  }

  IntMatrix times(const IntMatrix& o) const {
    IntMatrix out(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k)
        if (a[i][k] != 0)
          for (int j = 0; j < o.cols; ++j) out.a[i][j] += a[i][k] * o.a[k][j];
    return out;
  }
};

struct Unimodular {
  IntMatrix e;
  IntMatrix inv;

  explicit Unimodular(int n) : e(IntMatrix::identity(n)), inv(IntMatrix::identity(n)) {}
};

Unimodular random_unimodular(int n, SeededRng& rng) {
  Unimodular u(n);
  int ops = 2 * n;
  for (int t = 0; t < ops; ++t) {
    if (n < 2) break;
    int i = rng.uniform(0, n - 1);
    int j = rng.uniform(0, n - 1);
    if (i == j) continue;
    long long cval = rng.uniform(-2, 2);
    if (cval == 0) cval = 1;
    // e := (I + c E_ji) e  (row j += c * row i); inv := inv (I - c E_ji).
    for (int k = 0; k < n; ++k) u.e.a[j][k] += cval * u.e.a[i][k];
    for (int k = 0; k < n; ++k) u.inv.a[k][i] -= cval * u.inv.a[k][j];
  }
  return u;
}

BraneComplex constant_complex(int index, std::uint64_t seed) {
  SeededRng rng(seed);
  int n = 1 + index % 3;
  int length = 1 + index % 4;  // number of positions; index spreads the mix
  std::vector<int> sizes(length);
  for (int& s : sizes) s = rng.uniform(1, 3);

  std::vector<int> ranks(std::max(0, length - 1), 0);
  int prev_rank = 0;
  for (int p = 0; p + 1 < length; ++p) {
    int cap = std::min(sizes[p] - prev_rank, sizes[p + 1]);
    ranks[p] = cap <= 0 ? 0 : rng.uniform(0, cap);
    prev_rank = ranks[p];
  }

  std::vector<Unimodular> frames;
  frames.reserve(sizes.size());
  for (int s : sizes) frames.push_back(random_unimodular(s, rng));

  BraneComplex g;
  g.n = n;
  g.lo = rng.uniform(-1, 1);
  for (int s : sizes) g.terms.push_back(Term{std::vector<int>(s, 0)});
  for (int p = 0; p + 1 < length; ++p) {
    IntMatrix j(sizes[p + 1], sizes[p]);
    for (int b = 0; b < ranks[p]; ++b) j.a[sizes[p + 1] - ranks[p] + b][b] = 1;
    IntMatrix d = frames[p + 1].e.times(j).times(frames[p].inv);
    PolyMatrix block = PolyMatrix::zero(sizes[p + 1], sizes[p]);
    for (int r = 0; r < d.rows; ++r)
      for (int cix = 0; cix < d.cols; ++cix)
        if (d.a[r][cix] != 0)
          block.set(r, cix,
                    HomogeneousPoly::constant(n, make_rational(d.a[r][cix], 1)));
    g.diffs.push_back(block);
  }
  return g;
}

Criterion criterion5() {
  Criterion c;
  int single_position = 0;
  for (int i = 0; i < 25 && c.pass; ++i) {
    BraneComplex g = constant_complex(i, 50'000ull + static_cast<std::uint64_t>(i));
    auto report = validate(g);
    if (!report.valid()) {
      c.fail("constant complex " + std::to_string(i) + " failed validation");
      break;
    }
    if (!atiyah_cocycle(g).is_zero()) {
      c.fail("constant complex " + std::to_string(i) +
             " has a nonzero obstruction cochain");
      break;
    }
    auto dec = gauge_exists(g);
    if (!dec.exists) {
      c.fail("constant complex " + std::to_string(i) + " was rejected");
      break;
    }
    GaugeWitness w = canonical_gauge_field(g);
    if (!w.correction.empty()) {
      c.fail("canonical field for complex " + std::to_string(i) +
             " has a nonzero residual correction");
      break;
    }
    if (g.terms.size() == 1) {
      ++single_position;
      if (dec.space_dim != 0) {
        c.fail("single-position complex " + std::to_string(i) +
               " has space_dim " + std::to_string(dec.space_dim));
        break;
      }
    }
  }
  if (c.pass && single_position == 0)
    c.fail("seed schedule produced no single-position instances");
  if (c.pass)
    c.note = std::to_string(single_position) + " single-position instances";
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 6: seeded branes whose twist data forces the obstruction.
//
// Seeds are accepted when (a) some position mixes a strictly negative twist
// with a nonzero per-position twist sum, and (b) the alternating sum of the
// per-position twist sums is nonzero. (b) is the invariant actually carried
// by the obstruction class: it survives quasi-isomorphism, while (a) alone
// can be faked by contractible padding (the cone of an identity map has (a)
// yet carries a field).
Criterion criterion6() {
  Criterion c;
  int accepted = 0;
  int attempts = 0;
  std::uint64_t seed = 60'000ull;
  while (accepted < 25 && attempts < 2000 && c.pass) {
    int n = 1 + attempts % 2;
    int depth = attempts % 3;
    BraneComplex g = random_brane(n, depth, seed + static_cast<std::uint64_t>(attempts));
    ++attempts;

    bool literal = false;
    long long total = 0;
    for (int p = g.lo; p <= g.hi(); ++p) {
      const Term& t = g.term(p);
      bool has_negative = false;
      for (int k : t.twists) has_negative = has_negative || k < 0;
      long long sum = first_chern(t);
      if (has_negative && sum != 0) literal = true;
      total += sign_of_position(p) * sum;
    }
    if (!literal || total == 0) continue;

    GaugeOptions opts;
    opts.want_witness = false;
    auto dec = gauge_exists(g, opts);
    if (dec.exists) {
      std::ostringstream why;
      why << "seed " << (seed + attempts - 1) << " (" << describe(g)
          << ") unexpectedly admits a field";
      c.fail(why.str());
      break;
    }
    ++accepted;
  }
  if (c.pass && accepted < 25)
    c.fail("only " + std::to_string(accepted) +
           " qualifying seeds found within the attempt budget");
  if (c.pass)
    c.note = "25 accepted from " + std::to_string(attempts) + " candidates";
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 7: randomized property suites, >= 50 exact cases each.

BraneComplex sized_brane(int trial, std::uint64_t seed) {
  // Mostly n=1 with a steady n=2 mix; depth cycles 0..2 but deep n=2 cases
  // are kept shallow enough to stay within the runtime budget.
  int n = (trial % 10 < 7) ? 1 : 2;
  int depth = trial % 3;
  if (n == 2 && depth == 2 && trial % 20 != 19) depth = 1;
  return random_brane(n, depth, seed);
}

Criterion criterion7() {
  Criterion c;

  // (a) obstruction cochain closure inside the covering model
  for (int t = 0; t < 50 && c.pass; ++t) {
    BraneComplex g = sized_brane(t, 70'000ull + static_cast<std::uint64_t>(t));
    AtiyahCocycle ac = atiyah_cocycle(g);  // throws if symbolic closure fails
    OmegaReplacementData omega = omega_replacement(g, 1);
    HomComplexData hom = hom_complex(g, omega.cx);
    TotalModel model(hom.cx, truncation_bound(hom.cx), -1, 2);
    auto v = embed_atiyah(ac, hom, omega, model);
    if (!model.is_cocycle(1, v))
      c.fail("closure case " + std::to_string(t) + ": embedded cochain not closed");
  }

  // (b) cutoff stability M vs M+2
  for (int t = 0; t < 50 && c.pass; ++t) {
    BraneComplex g = sized_brane(t, 71'000ull + static_cast<std::uint64_t>(t));
    auto base = hypercohomology(g);
    TotalOptions wide;
    wide.truncation = truncation_bound(g) + 2;
    auto shifted = hypercohomology(g, wide);
    if (base.dims != shifted.dims)
      c.fail("cutoff case " + std::to_string(t) + ": dimensions moved with M");
  }

  // (c) duality of morphism dimensions for line bundles
  {
    SeededRng rng(72'000ull);
    for (int t = 0; t < 60 && c.pass; ++t) {
      int n = 1 + t % 3;
      int a = rng.uniform(-4, 4);
      int b = rng.uniform(-4, 4);
      for (int i = 0; i <= n && c.pass; ++i) {
        long long lhs = ext_dim(line_bundle(n, a), line_bundle(n, b), i);
        long long rhs = ext_dim(line_bundle(n, b),
                                twist_complex(line_bundle(n, a), -n - 1), n - i);
        if (lhs != rhs)
          c.fail("duality case " + std::to_string(t) + " failed at degree " +
                 std::to_string(i));
      }
    }
  }

  // (d) Euler characteristic identity
  for (int t = 0; t < 50 && c.pass; ++t) {
    BraneComplex g = sized_brane(t, 73'000ull + static_cast<std::uint64_t>(t));
    auto res = hypercohomology(g);
    long long lhs = chi(res.dims);
    long long rhs = 0;
    for (int p = g.lo; p <= g.hi(); ++p)
      for (int k : g.term(p).twists)
        rhs += sign_of_position(p) * binomial_poly_dim(k, g.n);
    if (lhs != rhs)
      c.fail("Euler case " + std::to_string(t) + ": " + std::to_string(lhs) +
             " vs " + std::to_string(rhs));
  }

  // (e) shift/twist/cone compatibilities, including the twist adjunction
  {
    SeededRng rng(74'000ull);
    for (int t = 0; t < 50 && c.pass; ++t) {
      int n = (t % 5 < 3) ? 1 : 2;
      int deptha = t % 2;
      BraneComplex a = random_brane(n, deptha, rng.raw());
      BraneComplex b = random_brane(n, 0, rng.raw());

      int l = rng.uniform(-2, 2);
      auto base = hypercohomology(a).dims;
      auto moved = hypercohomology(shift(a, l)).dims;
      for (int i = -8; i <= 8 && c.pass; ++i)
        if (dim_at(moved, i) != dim_at(base, i + l))
          c.fail("shift case " + std::to_string(t));

      int k = rng.uniform(-2, 2);
      auto lhs = ext_dims(twist_complex(a, k), b);
      auto rhs = ext_dims(a, twist_complex(b, -k));
      for (int i = -8; i <= 8 && c.pass; ++i)
        if (dim_at(lhs, i) != dim_at(rhs, i))
          c.fail("adjunction case " + std::to_string(t));

      SeededRng map_rng(rng.raw());
      ChainMap h = random_chain_map(a, b, map_rng);
      auto cone_dims = hypercohomology(cone(h)).dims;
      if (chi(cone_dims) != chi(hypercohomology(b).dims) - chi(base))
        c.fail("cone case " + std::to_string(t) + ": Euler additivity failed");

      if (t % 10 == 0) {
        ChainMap id;
        id.source = a;
        id.target = a;
        for (int p = a.lo; p <= a.hi(); ++p) {
          int s = a.term(p).size();
          PolyMatrix block = PolyMatrix::zero(s, s);
          for (int d = 0; d < s; ++d)
            block.set(d, d, HomogeneousPoly::constant(a.n, make_rational(1, 1)));
          id.blocks[p] = block;
        }
        for (const auto& [i, d] : hypercohomology(cone(id)).dims)
          if (d != 0) c.fail("identity cone case " + std::to_string(t));
      }
    }
  }

  return c;
}

// ---------------------------------------------------------------------------
// Criterion 8: audit fixtures and flag exactness on seeded branes.
Criterion criterion8() {
  Criterion c;

  struct Fixture {
    BraneComplex g;
    long long expected;
  };
  std::vector<Fixture> fixtures;

  fixtures.push_back({line_bundle(2, 0), 0});

  BraneComplex two_p2;
  two_p2.n = 2;
  two_p2.terms = {Term{{-2, 0}}};
  fixtures.push_back({two_p2, 3});

  BraneComplex mixed_p1;
  mixed_p1.n = 1;
  mixed_p1.terms = {Term{{-1, 0}}};
  fixtures.push_back({mixed_p1, 0});

  BraneComplex two_p1;
  two_p1.n = 1;
  two_p1.terms = {Term{{-2, 0}}};
  fixtures.push_back({two_p1, 1});

  BraneComplex pair;
  pair.n = 2;
  pair.lo = -1;
  pair.terms = {Term{{-1}}, Term{{0}}};
  PolyMatrix d = PolyMatrix::zero(1, 1);
  d.set(0, 0, parse_poly("x0", 2));
  pair.diffs = {d};
  fixtures.push_back({pair, 0});

  for (std::size_t i = 0; i < fixtures.size() && c.pass; ++i) {
    auto report = gauge_hom_audit(fixtures[i].g);
    if (report.naive_hom0 != fixtures[i].expected) {
      std::ostringstream why;
      why << "fixture " << i << " (" << describe(fixtures[i].g)
          << "): naive_hom0 " << report.naive_hom0 << ", expected "
          << fixtures[i].expected;
      c.fail(why.str());
    }
    if (report.discrepancy != (report.naive_hom0 != report.ext.at(0)))
      c.fail("fixture " + std::to_string(i) + ": flag inconsistent");
  }

  int discrepancies = 0;
  for (int t = 0; t < 25 && c.pass; ++t) {
    int n = 1 + t % 2;
    BraneComplex g = random_brane(n, t % 3, 80'000ull + static_cast<std::uint64_t>(t));
    auto report = gauge_hom_audit(g);
    long long recomputed = naive_hom(g, omega_replacement(g, 1).cx, 0);
    if (report.naive_hom0 != recomputed)
      c.fail("seeded audit " + std::to_string(t) +
             ": reported section count differs from recomputation");
    if (report.discrepancy != (report.naive_hom0 != report.ext.at(0)))
      c.fail("seeded audit " + std::to_string(t) + ": flag inconsistent");
    if (report.discrepancy) ++discrepancies;
  }
  if (c.pass)
    c.note = std::to_string(discrepancies) + " of 25 seeded audits flagged";
  return c;
}

struct Entry {
  std::string name;
  Criterion (*fn)();
  double budget_seconds;
};

}  // namespace

int main() {
  const std::vector<Entry> entries = {
      {"line-bundle cohomology grid", criterion1, 60.0},
      {"vanishing of global one- and two-forms", criterion2, 30.0},
      {"twisted-form dimension cross-check", criterion3, 300.0},
      {"field existence for line bundles", criterion4, 120.0},
      {"constant complexes carry canonical fields", criterion5, 300.0},
      {"obstructed twist patterns admit no field", criterion6, 600.0},
      {"property suites (closure, cutoff, duality, Euler, functoriality)",
       criterion7, 600.0},
      {"audit fixtures and discrepancy flag", criterion8, 600.0},
  };

  bool all_pass = true;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Criterion result;
    try {
      result = entries[i].fn();
    } catch (const std::exception& e) {
      result.pass = false;
      result.note = std::string("exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (result.pass && elapsed > entries[i].budget_seconds) {
      result.pass = false;
      result.note = "runtime budget exceeded";
    }
    all_pass = all_pass && result.pass;

    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << "criterion " << (i + 1) << " (" << entries[i].name << "): "
         << (result.pass ? "PASS" : "FAIL") << " [" << elapsed << "s";
    if (!result.note.empty()) line << "; " << result.note;
    line << "]";
    std::cout << line.str() << std::endl;
  }
  std::cout << (all_pass ? "all criteria passed" : "some criteria failed")
            << std::endl;
  return all_pass ? 0 : 1;
}
