#include "branegauge/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace branegauge {

int total_degree(const MultiIndex& mi) {
  int d = 0;
  for (int e : mi) d += e;
  return d;
}

MultiIndex add_index(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex out(a);
  for (size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

HomogeneousPoly HomogeneousPoly::monomial(const MultiIndex& mi,
                                          const Rational& coef) {
  HomogeneousPoly p;
  if (coef == 0) return p;
  for (int e : mi)
    if (e < 0)
      throw Error(Error::Kind::InvalidInput,
                  "negative exponent in homogeneous monomial");
  p.degree = total_degree(mi);
  p.terms[mi] = coef;
  return p;
}

HomogeneousPoly HomogeneousPoly::constant(int n, const Rational& coef) {
  return monomial(MultiIndex(n + 1, 0), coef);
}

int HomogeneousPoly::vars() const {
  return terms.empty() ? 0 : static_cast<int>(terms.begin()->first.size());
}

HomogeneousPoly HomogeneousPoly::operator+(const HomogeneousPoly& other) const {
  if (is_zero()) return other;
  if (other.is_zero()) return *this;
  if (*degree != *other.degree)
    throw Error(Error::Kind::InvalidInput,
                "sum of homogeneous polynomials of different degrees");
  HomogeneousPoly out = *this;
  for (const auto& [mi, c] : other.terms) {
    auto it = out.terms.find(mi);
    if (it == out.terms.end()) {
      out.terms.emplace(mi, c);
    } else {
      it->second += c;
      if (it->second == 0) out.terms.erase(it);
    }
  }
  if (out.terms.empty()) out.degree.reset();
  return out;
}

HomogeneousPoly HomogeneousPoly::operator-(const HomogeneousPoly& other) const {
  return *this + other.negated();
}

HomogeneousPoly HomogeneousPoly::operator*(const HomogeneousPoly& other) const {
  if (is_zero() || other.is_zero()) return zero();
  HomogeneousPoly out;
  out.degree = *degree + *other.degree;
  for (const auto& [a, ca] : terms)
    for (const auto& [b, cb] : other.terms) {
      MultiIndex m = add_index(a, b);
      Rational v = ca * cb;
      auto it = out.terms.find(m);
      if (it == out.terms.end()) {
        out.terms.emplace(std::move(m), std::move(v));
      } else {
        it->second += v;
        if (it->second == 0) out.terms.erase(it);
      }
    }
  if (out.terms.empty()) out.degree.reset();
  return out;
}

HomogeneousPoly HomogeneousPoly::scaled(const Rational& c) const {
  if (c == 0) return zero();
  HomogeneousPoly out = *this;
  for (auto& [mi, v] : out.terms) v *= c;
  return out;
}

bool HomogeneousPoly::operator==(const HomogeneousPoly& other) const {
  if (is_zero() || other.is_zero()) return is_zero() && other.is_zero();
  return *degree == *other.degree && terms == other.terms;
}

HomogeneousPoly partial_derivative(const HomogeneousPoly& p, int l) {
  HomogeneousPoly out;
  for (const auto& [mi, c] : p.terms) {
    if (mi[l] == 0) continue;
    MultiIndex m = mi;
    m[l] -= 1;
    out.terms[m] = c * mi[l];
  }
  if (!out.terms.empty()) out.degree = *p.degree - 1;
  return out;
}

namespace {

struct Parser {
  const std::string& text;
  size_t pos = 0;
  int n;

  explicit Parser(const std::string& t, int vars) : text(t), n(vars) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw Error(Error::Kind::InvalidInput,
                "polynomial syntax error at offset " + std::to_string(pos) +
                    ": " + what + " in \"" + text + "\"");
  }

  long long integer() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) fail("expected integer");
    return std::stoll(text.substr(start, pos - start));
  }

  bool at_digit() {
    skip_ws();
    return pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]));
  }

  // term := coef ['*' factors] | factors ; returns (monomial, coefficient)
  std::pair<MultiIndex, Rational> term() {
    Rational coef = 1;
    bool saw_coef = false;
    if (at_digit()) {
      long long num = integer();
      if (accept('/')) {
        long long den = integer();
        coef = make_rational(num, den);
      } else {
        coef = make_rational(num);
      }
      saw_coef = true;
    }
    MultiIndex mi(n + 1, 0);
    bool saw_factor = false;
    if (!saw_coef || accept('*')) {
      while (true) {
        skip_ws();
        if (pos >= text.size() || text[pos] != 'x') break;
        ++pos;
        if (!at_digit()) fail("expected variable index after 'x'");
        long long idx = integer();
        if (idx > n)
          fail("variable x" + std::to_string(idx) + " exceeds x" +
               std::to_string(n));
        int e = 1;
        if (accept('^')) {
          long long ee = integer();
          if (ee < 1) fail("exponent must be >= 1");
          e = static_cast<int>(ee);
        }
        mi[static_cast<size_t>(idx)] += e;
        saw_factor = true;
        if (!accept('*')) break;
      }
      if (saw_coef && !saw_factor) fail("expected factor after '*'");
    }
    if (!saw_coef && !saw_factor) fail("expected term");
    return {mi, coef};
  }

  HomogeneousPoly poly() {
    HomogeneousPoly out;
    bool first = true;
    while (true) {
      skip_ws();
      Rational sign = 1;
      if (accept('+')) {
        sign = 1;
      } else if (accept('-')) {
        sign = -1;
      } else if (!first) {
        break;
      }
      auto [mi, coef] = term();
      coef *= sign;
      if (coef != 0) {
        int d = total_degree(mi);
        if (out.degree && *out.degree != d)
          fail("mixed total degrees " + std::to_string(*out.degree) + " and " +
               std::to_string(d));
        out.degree = d;
        auto it = out.terms.find(mi);
        if (it == out.terms.end()) {
          out.terms.emplace(mi, coef);
        } else {
          it->second += coef;
          if (it->second == 0) out.terms.erase(it);
        }
      }
      first = false;
    }
    skip_ws();
    if (pos != text.size()) fail("unexpected trailing input");
    if (out.terms.empty()) out.degree.reset();
    return out;
  }
};

void append_monomial(std::ostringstream& os, const MultiIndex& mi,
                     const Rational& coef, bool leading) {
  Rational a = coef < 0 ? Rational(-coef) : coef;
  if (leading) {
    if (coef < 0) os << "-";
  } else {
    os << (coef < 0 ? " - " : " + ");
  }
  bool has_vars = total_degree(mi) > 0 || std::any_of(mi.begin(), mi.end(),
                                                      [](int e) { return e != 0; });
  if (a != 1 || !has_vars) {
    os << a.get_str();
    if (has_vars) os << "*";
  }
  bool first = true;
  for (size_t i = 0; i < mi.size(); ++i) {
    if (mi[i] == 0) continue;
    if (!first) os << "*";
    os << "x" << i;
    if (mi[i] != 1) os << "^" << mi[i];
    first = false;
  }
}

}  // namespace

HomogeneousPoly parse_poly(const std::string& text, int n) {
  if (n < 1)
    throw Error(Error::Kind::InvalidInput, "need at least two variables");
  Parser p(text, n);
  p.skip_ws();
  if (p.pos == text.size())
    throw Error(Error::Kind::InvalidInput, "empty polynomial text");
  return p.poly();
}

std::string to_string(const HomogeneousPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool leading = true;
  for (const auto& [mi, c] : p.terms) {
    append_monomial(os, mi, c, leading);
    leading = false;
  }
  return os.str();
}

std::vector<MultiIndex> monomial_basis(int n, int d) {
  std::vector<MultiIndex> out;
  if (n < 1 || d < 0) return out;
  MultiIndex cur(n + 1, 0);
  // Descending lexicographic: largest exponent on the earliest variable first.
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == n) {
      cur[var] = remaining;
      out.push_back(cur);
      cur[var] = 0;
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      cur[var] = e;
      self(self, var + 1, remaining - e);
    }
    cur[var] = 0;
  };
  rec(rec, 0, d);
  return out;
}

std::vector<std::vector<int>> subsets_of_size(int n, int size) {
  std::vector<std::vector<int>> out;
  if (size < 0 || size > n + 1) return out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    for (int v = next; v <= n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

long long binomial(long long n, long long k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  if (!r.fits_slong_p())
    throw Error(Error::Kind::Internal, "binomial overflow");
  return r.get_si();
}

long long binomial_poly_dim(long long k, int n) {
  // product_{j=1..n} (k + j) / n!
  mpz_class num = 1;
  for (int j = 1; j <= n; ++j) num *= mpz_class(static_cast<long>(k + j));
  mpz_class den;
  mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(n));
  mpz_class q = num / den;
  if (!q.fits_slong_p())
    throw Error(Error::Kind::Internal, "binomial_poly_dim overflow");
  return q.get_si();
}

LaurentPoly LaurentPoly::from(const HomogeneousPoly& p) {
  LaurentPoly out;
  out.terms = p.terms;
  return out;
}

LaurentPoly LaurentPoly::monomial(const MultiIndex& mi, const Rational& coef) {
  LaurentPoly out;
  if (coef != 0) out.terms[mi] = coef;
  return out;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& other) const {
  LaurentPoly out = *this;
  for (const auto& [mi, c] : other.terms) {
    auto it = out.terms.find(mi);
    if (it == out.terms.end()) {
      out.terms.emplace(mi, c);
    } else {
      it->second += c;
      if (it->second == 0) out.terms.erase(it);
    }
  }
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& other) const {
  return *this + other.scaled(-1);
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
  if (c == 0) return zero();
  LaurentPoly out = *this;
  for (auto& [mi, v] : out.terms) v *= c;
  return out;
}

LaurentPoly LaurentPoly::shifted(const MultiIndex& shift,
                                 const Rational& coef) const {
  if (coef == 0) return zero();
  LaurentPoly out;
  for (const auto& [mi, c] : terms) out.terms[add_index(mi, shift)] = c * coef;
  return out;
}

LaurentPoly LaurentPoly::times(const LaurentPoly& other) const {
  LaurentPoly out;
  for (const auto& [a, ca] : terms)
    for (const auto& [b, cb] : other.terms) {
      MultiIndex m = add_index(a, b);
      Rational v = ca * cb;
      auto it = out.terms.find(m);
      if (it == out.terms.end()) {
        out.terms.emplace(std::move(m), std::move(v));
      } else {
        it->second += v;
        if (it->second == 0) out.terms.erase(it);
      }
    }
  return out;
}

bool LaurentPoly::operator==(const LaurentPoly& other) const {
  return terms == other.terms;
}

LaurentPoly partial_derivative(const LaurentPoly& p, int l) {
  LaurentPoly out;
  for (const auto& [mi, c] : p.terms) {
    if (mi[l] == 0) continue;
    MultiIndex m = mi;
    m[l] -= 1;
    out.terms[m] = c * mi[l];
  }
  return out;
}

std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool leading = true;
  for (const auto& [mi, c] : p.terms) {
    Rational a = c < 0 ? Rational(-c) : c;
    if (leading) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool has_vars =
        std::any_of(mi.begin(), mi.end(), [](int e) { return e != 0; });
    if (a != 1 || !has_vars) {
      os << a.get_str();
      if (has_vars) os << "*";
    }
    bool first = true;
    for (size_t i = 0; i < mi.size(); ++i) {
      if (mi[i] == 0) continue;
      if (!first) os << "*";
      os << "x" << i;
      if (mi[i] != 1) os << "^" << mi[i];
      first = false;
    }
    leading = false;
  }
  return os.str();
}

}  // namespace branegauge
