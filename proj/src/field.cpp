#include "caylab/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace caylab {
namespace {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomial arithmetic over GF(p), coefficients lowest-degree first.
using Poly = std::vector<unsigned>;

Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mod(Poly a, const Poly& m, unsigned p) {
  a = poly_trim(std::move(a));
  while (a.size() >= m.size()) {
    unsigned lead = a.back();  // m is monic
    size_t shift = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) {
      unsigned sub = (lead * m[i]) % p;
      unsigned& c = a[i + shift];
      c = (c + p - sub) % p;
    }
    a = poly_trim(std::move(a));
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return c;
}

// Exhaustive trial division by every monic polynomial of degree <= deg/2.
bool poly_irreducible(const Poly& m, unsigned p) {
  unsigned deg = static_cast<unsigned>(m.size()) - 1;
  if (deg == 0 || m.back() != 1) return false;
  for (unsigned d = 1; 2 * d <= deg; ++d) {
    unsigned count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (unsigned idx = 0; idx < count; ++idx) {
      Poly div(d + 1, 0);
      div[d] = 1;
      unsigned t = idx;
      for (unsigned i = 0; i < d; ++i) {
        div[i] = t % p;
        t /= p;
      }
      if (poly_mod(m, div, p).empty()) return false;
    }
  }
  return true;
}

Poly default_modulus(unsigned p, unsigned k) {
  unsigned count = 1;
  for (unsigned i = 0; i < k; ++i) count *= p;
  for (unsigned idx = 0; idx < count; ++idx) {
    Poly m(k + 1, 0);
    m[k] = 1;
    unsigned t = idx;
    for (unsigned i = 0; i < k; ++i) {
      m[i] = t % p;
      t /= p;
    }
    if (poly_irreducible(m, p)) return m;
  }
  fail("UnsupportedField", "no irreducible modulus found");  // unreachable
}

unsigned poly_to_index(const Poly& a, unsigned p, unsigned k) {
  unsigned idx = 0, mult = 1;
  for (unsigned i = 0; i < k; ++i) {
    idx += (i < a.size() ? a[i] : 0) * mult;
    mult *= p;
  }
  return idx;
}

Poly index_to_poly(unsigned idx, unsigned p, unsigned k) {
  Poly a(k, 0);
  for (unsigned i = 0; i < k; ++i) {
    a[i] = idx % p;
    idx /= p;
  }
  return poly_trim(std::move(a));
}

void build_tables(FieldData& d) {
  unsigned q = d.q, p = d.p, k = d.k;
  d.add_t.assign(size_t(q) * q, 0);
  d.mul_t.assign(size_t(q) * q, 0);
  d.neg_t.assign(q, 0);
  d.inv_t.assign(q, 0);
  for (unsigned a = 0; a < q; ++a) {
    Poly pa = index_to_poly(a, p, k);
    {
      Poly nn(k, 0);
      for (unsigned i = 0; i < pa.size(); ++i) nn[i] = (p - pa[i]) % p;
      d.neg_t[a] = static_cast<uint8_t>(poly_to_index(nn, p, k));
    }
    for (unsigned b = 0; b < q; ++b) {
      Poly pb = index_to_poly(b, p, k);
      Poly s(k, 0);
      for (unsigned i = 0; i < k; ++i)
        s[i] = ((i < pa.size() ? pa[i] : 0) + (i < pb.size() ? pb[i] : 0)) % p;
      d.add_t[size_t(a) * q + b] = static_cast<uint8_t>(poly_to_index(s, p, k));
      Poly m = poly_mod(poly_mul(pa, pb, p), d.modulus, p);
      d.mul_t[size_t(a) * q + b] = static_cast<uint8_t>(poly_to_index(m, p, k));
    }
  }
  for (unsigned a = 1; a < q; ++a)
    for (unsigned b = 1; b < q; ++b)
      if (d.mul_t[size_t(a) * q + b] == 1) {
        d.inv_t[a] = static_cast<uint8_t>(b);
        break;
      }
  if (p == 2) {
    d.frob_t.assign(q, 0);
    d.sqrt_t.assign(q, 0);
    for (unsigned a = 0; a < q; ++a) d.frob_t[a] = d.mul_t[size_t(a) * q + a];
    for (unsigned a = 0; a < q; ++a) d.sqrt_t[d.frob_t[a]] = static_cast<uint8_t>(a);
  }
}

std::string ext_name(unsigned p, unsigned k, const Poly& modulus) {
  std::ostringstream os;
  os << "gf(" << p << "^" << k << ";modulus=[";
  for (unsigned i = 0; i <= k; ++i) os << (i ? "," : "") << modulus[i];
  os << "])";
  return os.str();
}

// Descriptors live for the program's lifetime and are interned by name, so
// handle equality is pointer equality.
std::map<std::string, std::unique_ptr<FieldData>>& registry() {
  static std::map<std::string, std::unique_ptr<FieldData>> r;
  return r;
}
std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

const FieldData* intern(std::unique_ptr<FieldData> d) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& r = registry();
  auto it = r.find(d->name);
  if (it == r.end()) it = r.emplace(d->name, std::move(d)).first;
  return it->second.get();
}

}  // namespace

Field Field::gf_prime(unsigned p) {
  if (!is_prime(p) || p > 97)
    fail("UnsupportedField", "prime fields supported up to p=97, got " + std::to_string(p));
  auto d = std::make_unique<FieldData>();
  d->kind = FieldKind::prime;
  d->p = p;
  d->k = 1;
  d->q = p;
  d->modulus = {0, 1};
  d->name = "gf(" + std::to_string(p) + ")";
  build_tables(*d);
  return Field(intern(std::move(d)));
}

Field Field::gf_ext(unsigned p, unsigned k, std::vector<unsigned> modulus) {
  if (!is_prime(p)) fail("UnsupportedField", "extension base must be prime");
  if (k < 2) fail("UnsupportedField", "extension degree must be >= 2");
  unsigned q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > 256) fail("UnsupportedField", "extension fields supported up to order 256");
  }
  if (modulus.empty()) {
    modulus = default_modulus(p, k);
  } else {
    for (auto& c : modulus) c %= p;
    if (modulus.size() != k + 1 || modulus.back() != 1)
      fail("UnsupportedField", "modulus must be monic of degree k");
    if (!poly_irreducible(modulus, p))
      fail("UnsupportedField", "modulus is reducible over gf(" + std::to_string(p) + ")");
  }
  auto d = std::make_unique<FieldData>();
  d->kind = FieldKind::extension;
  d->p = p;
  d->k = k;
  d->q = q;
  d->modulus = modulus;
  d->name = ext_name(p, k, modulus);
  build_tables(*d);
  return Field(intern(std::move(d)));
}

Field Field::gf(unsigned q) {
  if (is_prime(q)) return gf_prime(q);
  for (unsigned p = 2; p <= q; ++p) {
    if (!is_prime(p) || q % p) continue;
    unsigned k = 0, t = q;
    while (t > 1 && t % p == 0) {
      t /= p;
      ++k;
    }
    if (t == 1) return gf_ext(p, k);
    break;
  }
  fail("UnsupportedField", std::to_string(q) + " is not a prime power");
}

Field Field::rationals() {
  auto d = std::make_unique<FieldData>();
  d->kind = FieldKind::rationals;
  d->name = "q";
  return Field(intern(std::move(d)));
}

Field Field::parse(const std::string& text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.rfind("gf(", 0) == 0 && text.back() == ')') {
    std::string body = text.substr(3, text.size() - 4);
    std::string spec = body, mod;
    auto semi = body.find(';');
    if (semi != std::string::npos) {
      spec = body.substr(0, semi);
      mod = body.substr(semi + 1);
    }
    auto caret = spec.find('^');
    try {
      if (caret == std::string::npos) {
        unsigned q = static_cast<unsigned>(std::stoul(spec));
        if (!mod.empty()) fail("ParseError", "modulus given for prime field");
        return gf(q);
      }
      unsigned p = static_cast<unsigned>(std::stoul(spec.substr(0, caret)));
      unsigned k = static_cast<unsigned>(std::stoul(spec.substr(caret + 1)));
      std::vector<unsigned> modulus;
      if (!mod.empty()) {
        if (mod.rfind("modulus=[", 0) != 0 || mod.back() != ']')
          fail("ParseError", "bad modulus syntax in " + text);
        std::string list = mod.substr(9, mod.size() - 10);
        std::istringstream is(list);
        std::string item;
        while (std::getline(is, item, ','))
          modulus.push_back(static_cast<unsigned>(std::stoul(item)));
      }
      return gf_ext(p, k, modulus);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail("ParseError", "bad field descriptor: " + text);
    }
  }
  fail("ParseError", "bad field descriptor: " + text);
}

Fe Field::zero() const { return finite() ? Fe(d_, 0u) : Fe(d_, BigRat(0)); }
Fe Field::one() const { return finite() ? Fe(d_, 1u) : Fe(d_, BigRat(1)); }

Fe Field::from_int(long long n) const {
  if (!finite()) return Fe(d_, BigRat(n));
  long long p = d_->p;
  unsigned r = static_cast<unsigned>(((n % p) + p) % p);
  return Fe(d_, r);  // prime-subfield embedding: index of residue
}

Fe Field::from_index(unsigned idx) const {
  if (!finite() || idx >= d_->q) fail("ParseError", "element index out of range");
  return Fe(d_, idx);
}

Fe Field::from_fraction(const BigInt& num, const BigInt& den) const {
  if (!is_rationals()) fail("FieldMismatch", "fraction in a finite field");
  if (den.is_zero()) fail("ParseError", "zero denominator");
  return Fe(d_, Fe::make_rat(num, den));
}

Fe Field::parse_elem(const std::string& text) const {
  try {
    if (d_->kind == FieldKind::rationals) {
      auto slash = text.find('/');
      if (slash == std::string::npos) return Fe(d_, BigRat(BigInt(text)));
      BigInt num(text.substr(0, slash)), den(text.substr(slash + 1));
      if (den.is_zero()) fail("ParseError", "zero denominator in '" + text + "'");
      return Fe(d_, Fe::make_rat(num, den));
    }
    if (d_->kind == FieldKind::extension) {
      if (text.size() < 2 || text.front() != '[' || text.back() != ']')
        fail("ParseError", "extension element must be a coefficient list");
      std::istringstream is(text.substr(1, text.size() - 2));
      std::string item;
      std::vector<unsigned> coeffs;
      while (std::getline(is, item, ','))
        coeffs.push_back(static_cast<unsigned>(std::stoul(item)) % d_->p);
      if (coeffs.size() > d_->k) fail("ParseError", "too many coefficients");
      unsigned idx = 0, mult = 1;
      for (unsigned i = 0; i < d_->k; ++i) {
        idx += (i < coeffs.size() ? coeffs[i] : 0) * mult;
        mult *= d_->p;
      }
      return Fe(d_, idx);
    }
    long long v = std::stoll(text);
    return from_int(v);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail("ParseError", "bad field element: '" + text + "'");
  }
}

Fe Fe::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  Fe acc = field().one(), base = *this;
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

std::string Fe::str() const {
  if (!f_) return "<null>";
  if (f_->kind == FieldKind::rationals) {
    std::ostringstream os;
    os << numerator(r_);
    if (denominator(r_) != 1) os << "/" << denominator(r_);
    return os.str();
  }
  if (f_->kind == FieldKind::prime) return std::to_string(v_);
  std::ostringstream os;
  os << "[";
  unsigned t = v_;
  for (unsigned i = 0; i < f_->k; ++i) {
    os << (i ? "," : "") << t % f_->p;
    t /= f_->p;
  }
  os << "]";
  return os.str();
}

Fe frobenius(const Fe& x) {
  if (x.data()->characteristic() != 2)
    fail("WrongCharacteristic", "frobenius requires characteristic 2");
  return Fe(x.data(), x.data()->frob_t[x.index()]);
}

Fe frobenius_inverse(const Fe& x) {
  if (x.data()->characteristic() != 2)
    fail("WrongCharacteristic", "frobenius_inverse requires characteristic 2");
  return Fe(x.data(), x.data()->sqrt_t[x.index()]);
}

Fe absolute_trace(const Fe& x) {
  const FieldData* f = x.data();
  if (f->characteristic() != 2)
    fail("WrongField", "absolute_trace requires a binary field");
  Fe acc = x, term = x;
  for (unsigned i = 1; i < f->k; ++i) {
    term = frobenius(term);
    acc += term;
  }
  return acc;
}

std::optional<Fe> artin_schreier_solve(const Fe& c) {
  const FieldData* f = c.data();
  if (f->characteristic() != 2)
    fail("WrongCharacteristic", "artin_schreier_solve requires characteristic 2");
  if (f->kind == FieldKind::rationals)
    fail("Unsupported", "no decision procedure for this field");
  // Fields are tiny; scan indices in canonical order so the least solution
  // is returned deterministically.
  for (unsigned m = 0; m < f->q; ++m) {
    Fe mu(f, m);
    if (frobenius(mu) + mu == c) return mu;
  }
  return std::nullopt;
}

}  // namespace caylab
