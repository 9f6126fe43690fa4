#include "zetaburst/chars.hpp"

#include <charconv>

#include "zetaburst/errors.hpp"

namespace zetaburst {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

u64 ipow(u64 b, unsigned e) {
  u64 r = 1;
  while (e-- != 0) r *= b;
  return r;
}

u64 lcm_u64(u64 a, u64 b) { return a / gcd_u64(a, b) * b; }

bool is_primitive_root(u64 g, u64 m, u64 phi, const std::vector<std::pair<u64, unsigned>>& phi_factors) {
  if (gcd_u64(g, m) != 1) return false;
  for (auto [r, e] : phi_factors) {
    (void)e;
    if (powmod(g, phi / r, m) == 1) return false;
  }
  return true;
}

// Least positive integer that generates (Z/p^2)^* (hence every (Z/p^k)^*).
u64 conrey_generator(u64 p) {
  u64 m = p * p;
  u64 phi = p * (p - 1);
  auto f = factor_u64(phi);
  for (u64 g = 2;; ++g) {
    if (is_primitive_root(g, m, phi, f)) return g;
  }
}

// Exponent of the local character at p^e, in units of 1/phi(p^e), for every
// residue mod p^e (-1 where p divides the residue).
struct LocalChar {
  u64 modulus;
  u64 phi;
  std::vector<std::int64_t> exps;
};

LocalChar local_odd(u64 p, unsigned e, u64 n) {
  u64 pe = ipow(p, e);
  u64 phi = pe / p * (p - 1);
  std::vector<std::int64_t> ind(pe, -1);
  u64 g = conrey_generator(p) % pe;
  u64 x = 1;
  for (u64 k = 0; k < phi; ++k) {
    ind[x] = static_cast<std::int64_t>(k);
    x = mulmod(x, g, pe);
  }
  auto a = static_cast<u64>(ind[n % pe]);
  LocalChar lc{pe, phi, std::vector<std::int64_t>(pe, -1)};
  for (u64 m = 0; m < pe; ++m) {
    if (ind[m] >= 0) lc.exps[m] = static_cast<std::int64_t>(mulmod(a, static_cast<u64>(ind[m]), phi));
  }
  return lc;
}

LocalChar local_two(unsigned e, u64 n) {
  u64 pe = ipow(2, e);
  u64 phi = pe / 2;
  LocalChar lc{pe, phi, std::vector<std::int64_t>(pe, -1)};
  if (e == 1) {
    lc.exps[1] = 0;
    return lc;
  }
  if (e == 2) {
    bool minus = n % 4 == 3;
    lc.exps[1] = 0;
    lc.exps[3] = minus ? 1 : 0;
    return lc;
  }
  // u = eps * 5^a with eps = +-1
  std::vector<std::int64_t> five_log(pe, -1);
  u64 x = 1;
  for (u64 k = 0; k < pe / 4; ++k) {
    five_log[x] = static_cast<std::int64_t>(k);
    x = x * 5 % pe;
  }
  auto split = [&](u64 u, int& eps, u64& a) {
    if (u % 4 == 1) {
      eps = 1;
      a = static_cast<u64>(five_log[u]);
    } else {
      eps = -1;
      a = static_cast<u64>(five_log[pe - u]);
    }
  };
  int en;
  u64 an;
  split(n % pe, en, an);
  for (u64 m = 1; m < pe; m += 2) {
    int em;
    u64 am;
    split(m, em, am);
    u64 v = (2 * mulmod(an, am, phi)) % phi;
    if (en < 0 && em < 0) v = (v + phi / 2) % phi;
    lc.exps[m] = static_cast<std::int64_t>(v);
  }
  return lc;
}

}  // namespace

u64 gcd_u64(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::vector<std::pair<u64, unsigned>> factor_u64(u64 n) {
  std::vector<std::pair<u64, unsigned>> f;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

RootOfUnity operator*(RootOfUnity a, RootOfUnity b) {
  u64 ord = lcm_u64(a.ord, b.ord);
  u64 k = (mulmod(a.k, ord / a.ord, ord) + mulmod(b.k, ord / b.ord, ord)) % ord;
  u64 g = gcd_u64(k, ord);
  if (k == 0) return {0, 1};
  return {k / g, ord / g};
}

bool operator==(RootOfUnity a, RootOfUnity b) {
  // compare k/ord as fractions
  return static_cast<u128>(a.k) * b.ord == static_cast<u128>(b.k) * a.ord;
}

ComplexBall to_complex(RootOfUnity z, mpfr_prec_t prec) { return exp_2pi_i(z.angle(), prec); }

DirichletChar DirichletChar::conrey(u64 q, u64 n) {
  if (q == 0) throw DomainError("character modulus must be positive");
  if (q > 100000000ULL) throw DomainError("character modulus too large");
  DirichletChar c;
  c.q_ = q;
  c.n_ = q == 1 ? 1 : n % q;
  if (q > 1 && gcd_u64(c.n_, q) != 1) {
    throw DomainError("Conrey index " + std::to_string(n) + " is not coprime to " + std::to_string(q));
  }

  std::vector<LocalChar> locals;
  u64 big_l = 1;
  for (auto [p, e] : factor_u64(q)) {
    locals.push_back(p == 2 ? local_two(e, c.n_) : local_odd(p, e, c.n_));
    big_l = lcm_u64(big_l, locals.back().phi);
  }

  std::vector<std::int64_t> table(q, -1);
  u64 g = big_l;
  for (u64 m = 0; m < q; ++m) {
    if (gcd_u64(m, q) != 1) continue;
    u64 v = 0;
    for (const auto& lc : locals) {
      auto x = lc.exps[m % lc.modulus];
      v = (v + mulmod(static_cast<u64>(x), big_l / lc.phi, big_l)) % big_l;
    }
    table[m] = static_cast<std::int64_t>(v);
    g = gcd_u64(g, v);
  }
  if (q == 1) table[0] = 0;
  c.order_ = big_l / g;
  for (auto& v : table) {
    if (v >= 0) v /= static_cast<std::int64_t>(g);
  }

  std::int64_t minus_one = table[(q - 1) % q];
  c.parity_ = (q <= 2 || minus_one == 0) ? 0 : 1;
  c.table_ = std::make_shared<const std::vector<std::int64_t>>(std::move(table));

  // Smallest f | q such that chi is trivial on units congruent to 1 mod f.
  c.conductor_ = q;
  for (u64 f = 1; f <= q; ++f) {
    if (q % f != 0) continue;
    bool ok = true;
    for (u64 m = 1 + f; m < q && ok; m += f) {
      auto v = (*c.table_)[m];
      if (v > 0) ok = false;
    }
    if (ok) {
      c.conductor_ = f;
      break;
    }
  }
  return c;
}

DirichletChar DirichletChar::parse(std::string_view label) {
  auto dot = label.find('.');
  if (dot == std::string_view::npos) throw DomainError("character label must look like q.n");
  auto num = [&](std::string_view s) {
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw DomainError("malformed character label '" + std::string(label) + "'");
    }
    return v;
  };
  u64 q = num(label.substr(0, dot));
  u64 n = num(label.substr(dot + 1));
  if (q == 0 || n == 0 || (q > 1 && n >= q) || (q == 1 && n != 1)) {
    throw DomainError("unknown character label '" + std::string(label) + "'");
  }
  return conrey(q, n);
}

std::string DirichletChar::label() const { return std::to_string(q_) + "." + std::to_string(n_); }

std::optional<RootOfUnity> DirichletChar::operator()(u64 m) const {
  auto v = (*table_)[m % q_];
  if (v < 0) return std::nullopt;
  return RootOfUnity{static_cast<u64>(v), order_};
}

DirichletChar DirichletChar::conj() const {
  if (q_ == 1) return *this;
  // inverse of n mod q
  mpz_class inv, nn(static_cast<unsigned long>(n_)), qq(static_cast<unsigned long>(q_));
  mpz_invert(inv.get_mpz_t(), nn.get_mpz_t(), qq.get_mpz_t());
  return conrey(q_, inv.get_ui());
}

PrimitivePart conductor_and_primitive_part(const DirichletChar& chi) {
  u64 f = chi.conductor();
  if (f == chi.modulus()) return {f, chi};
  if (f == 1) return {f, DirichletChar::trivial()};
  auto induces = [&](const DirichletChar& prim) {
    for (u64 m = 1; m < chi.modulus(); ++m) {
      auto v = chi(m);
      if (v && !(*v == *prim(m))) return false;
    }
    return true;
  };
  // n mod f is right for odd prime powers; at 2 the generator 5 need not
  // reduce compatibly, so fall back to a search.
  DirichletChar guess = DirichletChar::conrey(f, chi.index() % f);
  if (induces(guess)) return {f, guess};
  for (u64 n = 1; n < f; ++n) {
    if (gcd_u64(n, f) != 1) continue;
    DirichletChar c = DirichletChar::conrey(f, n);
    if (c.is_primitive() && induces(c)) return {f, c};
  }
  throw ResourceError("no primitive character found below the conductor");
}

ComplexBall gauss_sum(const DirichletChar& chi, mpfr_prec_t prec) {
  u64 q = chi.modulus();
  if (q == 1) return ComplexBall::real(Ball::from_si(1));
  mpfr_prec_t wp = prec + 2 * static_cast<mpfr_prec_t>(64 - __builtin_clzll(q)) + 8;
  ComplexBall s = ComplexBall::real(Ball());
  for (u64 m = 1; m <= q; ++m) {
    auto v = chi(m);
    if (!v) continue;
    Rational t = v->angle() + Rational(mpz_class(static_cast<unsigned long>(m)), mpz_class(static_cast<unsigned long>(q)));
    s = add(s, exp_2pi_i(t, wp), wp);
  }
  return {round(s.re, prec), round(s.im, prec)};
}

ComplexBall root_number(const DirichletChar& chi, mpfr_prec_t prec) {
  if (!chi.is_primitive()) throw PreconditionError("root number requires a primitive character");
  if (chi.modulus() == 1) return ComplexBall::real(Ball::from_si(1));
  mpfr_prec_t wp = prec + 16;
  ComplexBall tau = gauss_sum(chi, wp);
  if (chi.parity() == 1) tau = {tau.im, neg(tau.re)};  // divide by i
  Ball sq = sqrt(Ball::from_si(static_cast<long>(chi.modulus())), wp);
  return div(tau, sq, prec);
}

}  // namespace zetaburst
