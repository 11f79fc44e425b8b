#include "mwkt/ring.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <mutex>

namespace mwkt {

static constexpr int kRingSizeCap = 4096;

// ---- arithmetic ----

std::vector<int> LocalRing::gf_digits(int a) const {
  std::vector<int> d(deg);
  for (int i = 0; i < deg; ++i) {
    d[i] = a % p;
    a /= p;
  }
  return d;
}

int LocalRing::gf_encode(const std::vector<int>& d) const {
  int a = 0;
  for (int i = deg - 1; i >= 0; --i) a = a * p + d[i];
  return a;
}

int LocalRing::gf_mul_raw(int a, int b) const {
  std::vector<int> da = gf_digits(a), db = gf_digits(b);
  std::vector<int> prod(2 * deg - 1, 0);
  for (int i = 0; i < deg; ++i)
    if (da[i])
      for (int j = 0; j < deg; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  for (int m = 2 * deg - 2; m >= deg; --m) {
    int c = prod[m];
    if (!c) continue;
    prod[m] = 0;
    for (int i = 0; i < deg; ++i)
      prod[m - deg + i] = ((prod[m - deg + i] - c * poly[i]) % p + p * p) % p;
  }
  prod.resize(deg);
  return gf_encode(prod);
}

std::vector<int> LocalRing::tr_digits(int a) const {
  std::vector<int> d(deg);
  for (int i = 0; i < deg; ++i) {
    d[i] = a % base_->size;
    a /= base_->size;
  }
  return d;
}

int LocalRing::tr_encode(const std::vector<int>& d) const {
  int a = 0;
  for (int i = deg - 1; i >= 0; --i) a = a * base_->size + d[i];
  return a;
}

int LocalRing::add(int a, int b) const {
  switch (kind) {
    case Kind::prime_field:
    case Kind::integers_mod_pk:
      return (a + b) % size;
    case Kind::galois_field: {
      if (a == 0) return b;
      if (b == 0) return a;
      int n = size - 1;
      int la = log_[a], lb = log_[b];
      if (la > lb) std::swap(la, lb);
      int z = zech_[lb - la];
      if (z < 0) return 0;  // 1 + g^(lb-la) = 0
      return exp_[(la + z) % n];
    }
    case Kind::truncation: {
      std::vector<int> da = tr_digits(a), db = tr_digits(b);
      for (int i = 0; i < deg; ++i) da[i] = base_->add(da[i], db[i]);
      return tr_encode(da);
    }
  }
  return 0;
}

int LocalRing::neg(int a) const {
  switch (kind) {
    case Kind::prime_field:
    case Kind::integers_mod_pk:
      return (size - a) % size;
    case Kind::galois_field: {
      std::vector<int> d = gf_digits(a);
      for (int& c : d) c = (p - c) % p;
      return gf_encode(d);
    }
    case Kind::truncation: {
      std::vector<int> d = tr_digits(a);
      for (int& c : d) c = base_->neg(c);
      return tr_encode(d);
    }
  }
  return 0;
}

int LocalRing::mul(int a, int b) const {
  switch (kind) {
    case Kind::prime_field:
    case Kind::integers_mod_pk:
      return static_cast<int>((static_cast<long>(a) * b) % size);
    case Kind::galois_field: {
      if (a == 0 || b == 0) return 0;
      return exp_[(log_[a] + log_[b]) % (size - 1)];
    }
    case Kind::truncation: {
      std::vector<int> da = tr_digits(a), db = tr_digits(b), out(deg, 0);
      for (int i = 0; i < deg; ++i)
        if (da[i])
          for (int j = 0; i + j < deg; ++j)
            out[i + j] = base_->add(out[i + j], base_->mul(da[i], db[j]));
      return tr_encode(out);
    }
  }
  return 0;
}

int LocalRing::pow(int a, long e) const {
  int acc = one_, b = a;
  while (e > 0) {
    if (e & 1) acc = mul(acc, b);
    b = mul(b, b);
    e >>= 1;
  }
  return acc;
}

int LocalRing::inv(int a) const {
  if (!is_unit(a)) throw mwkt_error("NotAUnit", spec + ": element " + std::to_string(a));
  return pow(a, static_cast<long>(units.size()) - 1);
}

int LocalRing::of_int(long n) const {
  long m = n % size;
  if (m < 0) m += size;
  switch (kind) {
    case Kind::prime_field:
    case Kind::integers_mod_pk:
      return static_cast<int>(m);
    case Kind::galois_field:
      return static_cast<int>(((n % p) + p) % p);
    case Kind::truncation: {
      std::vector<int> d(deg, 0);
      d[0] = base_->of_int(n);
      return tr_encode(d);
    }
  }
  return 0;
}

int LocalRing::residue(int a) const {
  switch (kind) {
    case Kind::prime_field:
    case Kind::galois_field:
      return a;
    case Kind::integers_mod_pk:
      return a % p;
    case Kind::truncation:
      return base_->residue(tr_digits(a)[0]);
  }
  return 0;
}

std::vector<int> LocalRing::add_coords(int a) const {
  switch (kind) {
    case Kind::prime_field:
    case Kind::integers_mod_pk:
      return {a};
    case Kind::galois_field:
      return gf_digits(a);
    case Kind::truncation: {
      std::vector<int> out;
      out.reserve(add_rank);
      for (int digit : tr_digits(a)) {
        std::vector<int> c = base_->add_coords(digit);
        out.insert(out.end(), c.begin(), c.end());
      }
      return out;
    }
  }
  return {};
}

int LocalRing::from_add_coords(const std::vector<int>& c) const {
  switch (kind) {
    case Kind::prime_field:
    case Kind::integers_mod_pk:
      return c[0] % size;
    case Kind::galois_field: {
      std::vector<int> d(c.begin(), c.begin() + deg);
      for (int& x : d) x %= p;
      return gf_encode(d);
    }
    case Kind::truncation: {
      std::vector<int> d(deg);
      int br = base_->add_rank;
      for (int j = 0; j < deg; ++j)
        d[j] = base_->from_add_coords(
            std::vector<int>(c.begin() + j * br, c.begin() + (j + 1) * br));
      return tr_encode(d);
    }
  }
  return 0;
}

void LocalRing::finish() {
  // unit set
  unit_idx.assign(size, -1);
  for (int a = 0; a < size; ++a) {
    bool u = false;
    switch (kind) {
      case Kind::prime_field:
      case Kind::galois_field:
        u = (a != 0);
        break;
      case Kind::integers_mod_pk:
        u = (a % p != 0);
        break;
      case Kind::truncation:
        u = base_->is_unit(a % base_->size);
        break;
    }
    if (u) {
      unit_idx[a] = static_cast<int>(units.size());
      units.push_back(a);
    }
  }

  // unit group: grow a subgroup, always adjoining the smallest missing unit.
  size_t total = units.size();
  std::vector<char> in(size, 0);
  std::vector<int> members{one_};
  in[one_] = 1;
  std::map<int, std::vector<int>> dlog;
  dlog[one_] = {};
  std::vector<SVec> rel;
  while (members.size() < total) {
    int g = -1;
    for (int u : units)
      if (!in[u]) {
        g = u;
        break;
      }
    int k = 1, x = g;
    while (!in[x]) {
      x = mul(x, g);
      ++k;
    }
    int gi = static_cast<int>(ug_gens.size());
    std::vector<int> snapshot = members;
    int gj = one_;
    for (int j = 1; j < k; ++j) {
      gj = mul(gj, g);
      for (int s : snapshot) {
        int m = mul(s, gj);
        in[m] = 1;
        members.push_back(m);
        std::vector<int> v = dlog[s];
        v.resize(gi + 1, 0);
        v[gi] = j;
        dlog[m] = std::move(v);
      }
    }
    // g^k lands in the previous subgroup: relation k*e_gi = dlog(g^k).
    std::vector<std::pair<int, Int>> row{{gi, Int(k)}};
    const std::vector<int>& w = dlog[x];
    for (size_t t = 0; t < w.size(); ++t)
      if (w[t]) row.emplace_back(static_cast<int>(t), Int(-w[t]));
    rel.push_back(svec_make(std::move(row)));
    ug_gens.push_back(g);
    ug_steps.push_back(k);
  }
  ug_dlog.resize(total);
  for (int u : units) {
    std::vector<int> v = dlog[u];
    v.resize(ug_gens.size(), 0);
    ug_dlog[unit_idx[u]] = std::move(v);
  }
  ug_structure = fp_group(static_cast<int>(ug_gens.size()), std::move(rel));
}

json LocalRing::info_json() const {
  const char* kinds[] = {"prime_field", "galois_field", "integers_mod_pk", "truncation"};
  json ug{{"generators", ug_gens},
          {"steps", ug_steps},
          {"structure", ug_structure.structure_json()}};
  return json{{"spec", spec},
              {"kind", kinds[static_cast<int>(kind)]},
              {"size", size},
              {"characteristic_prime", p},
              {"is_field", is_field},
              {"units", static_cast<long>(units.size())},
              {"unit_group", ug},
              {"residue_field", json{{"spec", residue_field()->spec},
                                     {"size", residue_size()}}},
              {"additive", json{{"exponent", add_exp}, {"rank", add_rank}}},
              {"steinberg_pairs", static_cast<long>(steinberg_pairs(*this).size())}};
}

// ---- parsing ----

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& why, size_t at) const {
    throw mwkt_error("MalformedSpec",
                     "ring spec '" + s + "': " + why + " at position " + std::to_string(at),
                     "", static_cast<long>(at));
  }
  bool eat(char c) {
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  long number() {
    size_t start = pos;
    long v = 0;
    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      if (v > 1000000) fail("number too large", start);
      ++pos;
    }
    if (pos == start) fail("expected a number", pos);
    return v;
  }
};

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// n = p^k with p prime, k >= 1; false otherwise.
bool prime_power(long n, long& p, int& k) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      p = d;
      k = 0;
      while (n % d == 0) {
        n /= d;
        ++k;
      }
      return n == 1;
    }
  p = n;
  k = 1;
  return true;
}

// dense poly arithmetic over F_p for irreducibility testing.
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, int p) {
  while (a.size() >= b.size() && !a.empty()) {
    if (a.back() == 0) {
      a.pop_back();
      continue;
    }
    int shift = static_cast<int>(a.size() - b.size());
    // b is monic
    int c = a.back();
    for (size_t i = 0; i < b.size(); ++i)
      a[shift + i] = ((a[shift + i] - c * b[i]) % p + p * p) % p;
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

bool poly_irreducible(const std::vector<int>& f, int p) {
  int d = static_cast<int>(f.size()) - 1;
  if (d <= 0) return false;
  // trial division by every monic poly of degree 1..d/2
  for (int e = 1; 2 * e <= d; ++e) {
    long count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (long idx = 0; idx < count; ++idx) {
      std::vector<int> g(e + 1);
      long t = idx;
      for (int i = 0; i < e; ++i) {
        g[i] = static_cast<int>(t % p);
        t /= p;
      }
      g[e] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<int> canonical_poly(int p, int d) {
  // smallest irreducible monic modulus in encoding order of the lower coeffs.
  long count = 1;
  for (int i = 0; i < d; ++i) count *= p;
  for (long idx = 0; idx < count; ++idx) {
    std::vector<int> f(d + 1);
    long t = idx;
    for (int i = 0; i < d; ++i) {
      f[i] = static_cast<int>(t % p);
      t /= p;
    }
    f[d] = 1;
    if (poly_irreducible(f, p)) return f;
  }
  throw mwkt_error("NotIrreducible", "no irreducible polynomial found");  // unreachable
}

std::string poly_str(const std::vector<int>& f) {
  std::string out;
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    if (!f[i]) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || f[i] != 1) out += std::to_string(f[i]);
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

struct Registry {
  std::vector<std::unique_ptr<LocalRing>> owned;
  std::map<std::string, LocalRing*> by_spec;
};
Registry& registry() {
  static Registry reg;
  return reg;
}
std::recursive_mutex& registry_mutex() {
  static std::recursive_mutex m;
  return m;
}

LocalRing* intern(std::unique_ptr<LocalRing> r);

}  // namespace

// construction needs access to the private tables; scoped to this file.
struct RingBuilder {
  static LocalRing* prime_field(long p);
  static LocalRing* galois(long p, int d, std::vector<int> poly);
  static LocalRing* zpk(long p, int k);
  static LocalRing* truncation(const LocalRing* base, int e);
};

LocalRing* RingBuilder::prime_field(long p) {
  auto r = std::unique_ptr<LocalRing>(new LocalRing());
  r->kind = LocalRing::Kind::prime_field;
  r->spec = "F" + std::to_string(p);
  r->size = static_cast<int>(p);
  r->p = static_cast<int>(p);
  r->deg = 1;
  r->is_field = true;
  r->add_exp = 1;
  r->add_rank = 1;
  r->add_basis = {1};
  r->finish();
  return intern(std::move(r));
}

LocalRing* RingBuilder::galois(long p, int d, std::vector<int> poly) {
  auto r = std::unique_ptr<LocalRing>(new LocalRing());
  r->kind = LocalRing::Kind::galois_field;
  long n = 1;
  for (int i = 0; i < d; ++i) n *= p;
  bool canon = (poly == canonical_poly(static_cast<int>(p), d));
  r->spec = canon ? "F" + std::to_string(n)
                  : "F" + std::to_string(p) + "^" + std::to_string(d) + "[" +
                        poly_str(poly) + "]";
  r->size = static_cast<int>(n);
  r->p = static_cast<int>(p);
  r->deg = d;
  r->is_field = true;
  r->poly = std::move(poly);
  r->add_exp = 1;
  r->add_rank = d;
  for (int i = 0; i < d; ++i) {
    int e = 1;
    for (int j = 0; j < i; ++j) e *= static_cast<int>(p);
    r->add_basis.push_back(e);
  }
  // discrete-log tables from a primitive element (order testing).
  int N = r->size;
  for (int g = 2; g < N; ++g) {
    int x = g, ord = 1;
    while (x != 1) {
      x = r->gf_mul_raw(x, g);
      ++ord;
      if (ord > N) break;
    }
    if (ord == N - 1) {
      r->exp_.assign(N - 1, 0);
      r->log_.assign(N, -1);
      int y = 1;
      for (int i = 0; i < N - 1; ++i) {
        r->exp_[i] = y;
        r->log_[y] = i;
        y = r->gf_mul_raw(y, g);
      }
      break;
    }
  }
  // zech table via digitwise addition: zech[k] = log(1 + g^k).
  r->zech_.assign(N - 1, -1);
  for (int k = 0; k < N - 1; ++k) {
    std::vector<int> dsum = r->gf_digits(r->exp_[k]);
    dsum[0] = (dsum[0] + 1) % static_cast<int>(p);
    int s = r->gf_encode(dsum);
    r->zech_[k] = (s == 0) ? -1 : r->log_[s];
  }
  r->finish();
  return intern(std::move(r));
}

LocalRing* RingBuilder::zpk(long p, int k) {
  if (k == 1) return RingBuilder::prime_field(p);
  long n = 1;
  for (int i = 0; i < k; ++i) n *= p;
  auto r = std::unique_ptr<LocalRing>(new LocalRing());
  r->kind = LocalRing::Kind::integers_mod_pk;
  r->spec = "Z/" + std::to_string(n);
  r->size = static_cast<int>(n);
  r->p = static_cast<int>(p);
  r->deg = k;
  r->is_field = false;
  r->residue_field_ = RingBuilder::prime_field(p);
  r->add_exp = k;
  r->add_rank = 1;
  r->add_basis = {1};
  r->finish();
  return intern(std::move(r));
}

LocalRing* RingBuilder::truncation(const LocalRing* base, int e) {
  long n = 1;
  for (int i = 0; i < e; ++i) {
    n *= base->size;
    if (n > kRingSizeCap)
      throw mwkt_error("TooLarge", "ring size exceeds cap", "ring-size-cap");
  }
  auto r = std::unique_ptr<LocalRing>(new LocalRing());
  r->kind = LocalRing::Kind::truncation;
  r->spec = base->spec + "[t]/t^" + std::to_string(e);
  r->size = static_cast<int>(n);
  r->p = base->p;
  r->deg = e;
  r->is_field = false;
  r->base_ = base;
  r->residue_field_ = base->residue_field();
  r->add_exp = base->add_exp;
  r->add_rank = base->add_rank * e;
  for (int j = 0; j < e; ++j) {
    long tj = 1;
    for (int i = 0; i < j; ++i) tj *= base->size;
    for (int b : base->add_basis) r->add_basis.push_back(static_cast<int>(b * tj));
  }
  r->finish();
  return intern(std::move(r));
}

namespace {

LocalRing* intern(std::unique_ptr<LocalRing> r) {
  auto& reg = registry();
  auto it = reg.by_spec.find(r->spec);
  if (it != reg.by_spec.end()) return it->second;
  LocalRing* out = r.get();
  reg.by_spec[r->spec] = out;
  reg.owned.push_back(std::move(r));
  return out;
}

LocalRing* parse_impl(const std::string& s) {
  Parser P{s};
  if (s.empty()) P.fail("empty spec", 0);

  // truncation: <base>[t]/t^<e>
  size_t tpos = s.find("[t]/t^");
  if (tpos != std::string::npos) {
    std::string base_spec = s.substr(0, tpos);
    if (base_spec.empty()) P.fail("missing truncation base", 0);
    const LocalRing& base = parse_ring_spec(base_spec);
    if (base.kind == LocalRing::Kind::truncation)
      P.fail("nested truncation is not supported", tpos);
    Parser Q{s};
    Q.pos = tpos + 6;
    long e = Q.number();
    if (Q.pos != s.size()) Q.fail("trailing characters", Q.pos);
    if (e < 1) Q.fail("truncation order must be >= 1", tpos + 6);
    if (e == 1) return const_cast<LocalRing*>(&base);
    return RingBuilder::truncation(&base, static_cast<int>(e));
  }

  if (P.eat('F')) {
    long q = P.number();
    long p;
    int d;
    if (P.eat('^')) {
      long dd = P.number();
      if (!is_prime(q))
        throw mwkt_error("NotLocal", "F" + std::to_string(q) + "^...: " +
                                         std::to_string(q) + " is not prime");
      p = q;
      d = static_cast<int>(dd);
      std::vector<int> f;
      if (P.eat('[')) {
        // parse polynomial in x over F_p
        std::vector<int> coeff(d + 1, 0);
        bool first = true;
        while (P.pos < s.size() && s[P.pos] != ']') {
          int sign = 1;
          if (P.eat('+')) {
          } else if (P.eat('-')) {
            sign = -1;
          } else if (!first) {
            P.fail("expected '+' or '-'", P.pos);
          }
          first = false;
          long c = 1;
          bool saw_c = false;
          if (P.pos < s.size() && isdigit(static_cast<unsigned char>(s[P.pos]))) {
            c = P.number();
            saw_c = true;
          }
          long e = 0;
          if (P.eat('x')) {
            e = 1;
            if (P.eat('^')) e = P.number();
          } else if (!saw_c) {
            P.fail("expected coefficient or 'x'", P.pos);
          }
          if (e > d) P.fail("polynomial degree exceeds declared degree", P.pos);
          coeff[e] = static_cast<int>((((coeff[e] + sign * c) % p) + p) % p);
        }
        if (!P.eat(']')) P.fail("expected ']'", P.pos);
        if (P.pos != s.size()) P.fail("trailing characters", P.pos);
        if (coeff[d] != 1)
          P.fail("modulus must be monic of degree " + std::to_string(d), P.pos);
        f = coeff;
        if (!poly_irreducible(f, static_cast<int>(p)))
          throw mwkt_error("NotIrreducible",
                           "F" + std::to_string(p) + "^" + std::to_string(d) + "[" +
                               poly_str(f) + "]: modulus is reducible");
      } else {
        if (P.pos != s.size()) P.fail("trailing characters", P.pos);
        f = canonical_poly(static_cast<int>(p), d);
      }
      long n = 1;
      for (int i = 0; i < d; ++i) {
        n *= p;
        if (n > kRingSizeCap)
          throw mwkt_error("TooLarge", "ring size exceeds cap", "ring-size-cap");
      }
      if (d == 1) return RingBuilder::prime_field(p);
      return RingBuilder::galois(p, d, f);
    }
    if (P.pos != s.size()) P.fail("trailing characters", P.pos);
    int k;
    if (!prime_power(q, p, k))
      throw mwkt_error("NotLocal", "F" + std::to_string(q) + ": " + std::to_string(q) +
                                       " is not a prime power");
    if (q > kRingSizeCap) throw mwkt_error("TooLarge", "ring size exceeds cap", "ring-size-cap");
    if (k == 1) return RingBuilder::prime_field(p);
    return RingBuilder::galois(p, k, canonical_poly(static_cast<int>(p), k));
  }

  if (P.eat('Z')) {
    if (!P.eat('/')) P.fail("expected '/'", P.pos);
    long n = P.number();
    if (P.eat('^')) {
      long k = P.number();
      if (P.pos != s.size()) P.fail("trailing characters", P.pos);
      if (!is_prime(n))
        throw mwkt_error("NotLocal", "Z/" + std::to_string(n) + "^...: base is not prime");
      long sz = 1;
      for (long i = 0; i < k; ++i) {
        sz *= n;
        if (sz > kRingSizeCap)
          throw mwkt_error("TooLarge", "ring size exceeds cap", "ring-size-cap");
      }
      return RingBuilder::zpk(n, static_cast<int>(k));
    }
    if (P.pos != s.size()) P.fail("trailing characters", P.pos);
    long p;
    int k;
    if (!prime_power(n, p, k))
      throw mwkt_error("NotLocal",
                       "Z/" + std::to_string(n) + " is not local (" + std::to_string(n) +
                           " is not a prime power)");
    if (n > kRingSizeCap) throw mwkt_error("TooLarge", "ring size exceeds cap", "ring-size-cap");
    return RingBuilder::zpk(p, k);
  }
  P.fail("expected 'F' or 'Z'", 0);
}

}  // namespace

const LocalRing& parse_ring_spec(const std::string& spec) {
  std::lock_guard<std::recursive_mutex> lock(registry_mutex());
  auto& reg = registry();
  auto it = reg.by_spec.find(spec);
  if (it != reg.by_spec.end()) return *it->second;
  LocalRing* r = parse_impl(spec);
  reg.by_spec.emplace(spec, r);  // alias non-canonical inputs to the instance
  return *r;
}

std::vector<std::pair<int, int>> steinberg_pairs(const LocalRing& R) {
  std::vector<std::pair<int, int>> out;
  for (int a : R.units) {
    int b = R.sub(R.one(), a);
    if (R.is_unit(b)) out.emplace_back(a, b);
  }
  return out;
}

std::optional<std::vector<int>> many_units_witness(const LocalRing& R, int m) {
  if (m < 1 || m > 8) throw mwkt_error("TooLarge", "witness length out of range", "witness-cap");
  std::vector<int> tuple;
  std::vector<int> sums;  // all nonempty subset sums of the chosen prefix
  std::function<bool()> dfs = [&]() -> bool {
    if (static_cast<int>(tuple.size()) == m) return true;
    for (int u : R.units) {
      bool ok = true;
      for (int s : sums)
        if (!R.is_unit(R.add(s, u))) {
          ok = false;
          break;
        }
      if (!ok) continue;
      size_t base = sums.size();
      sums.push_back(u);
      for (size_t i = 0; i < base; ++i) sums.push_back(R.add(sums[i], u));
      tuple.push_back(u);
      if (dfs()) return true;
      tuple.pop_back();
      sums.resize(base);
    }
    return false;
  };
  if (!dfs()) return std::nullopt;
  return tuple;
}

}  // namespace mwkt
