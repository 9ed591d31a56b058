#include "grothendieck.hpp"

#include <algorithm>
#include <stdexcept>

namespace oracle {

namespace {

int degree(const Mono& m) {
  int d = 0;
  for (int x : m) d += x;
  return d;
}

void add(Poly& p, const Mono& m, const mpq_class& c) {
  if (c == 0) return;
  auto& slot = p[m];
  slot += c;
  if (slot == 0) p.erase(m);
}

Poly mul(const Poly& a, const Poly& b, int cap) {
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Mono m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      if (degree(m) <= cap) add(out, m, ca * cb);
    }
  }
  return out;
}

Poly truncate(const Poly& p, int cap) {
  Poly out;
  for (const auto& [m, c] : p) {
    if (degree(m) <= cap) out.emplace(m, c);
  }
  return out;
}

// Homogeneous part of degree j.
Poly part(const Poly& p, int j) {
  Poly out;
  for (const auto& [m, c] : p) {
    if (degree(m) == j) out.emplace(m, c);
  }
  return out;
}

Mono unit(std::size_t nvars, std::size_t var, int power = 1) {
  Mono m(nvars, 0);
  m[var] = power;
  return m;
}

}  // namespace

std::vector<mpq_class> chern_v0(const Setup& s) {
  const int n = s.n;
  const int e = s.geometry == Geometry::Hypersurface ? n + 2 : n + 1;
  std::vector<mpq_class> c(static_cast<std::size_t>(n) + 1, 0);
  // binomial (1+h)^e
  mpz_class binom = 1;
  for (int j = 0; j <= n && j <= e; ++j) {
    c[static_cast<std::size_t>(j)] = binom;
    binom = binom * (e - j) / (j + 1);
  }
  if (s.geometry != Geometry::Pn) {
    // multiply by sum (-d h)^j
    std::vector<mpq_class> out(c.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      mpq_class p = 1;
      for (std::size_t j = 0; i + j < c.size(); ++j) {
        out[i + j] += c[i] * p;
        p *= -s.degree;
      }
    }
    c = out;
  }
  return c;
}

mpq_class top_pairing(const Setup& s) {
  return s.geometry == Geometry::Hypersurface ? mpq_class(s.degree) : mpq_class(1);
}

Poly monomial(int m, const std::vector<int>& e, const mpq_class& c) {
  Mono mono{m};
  mono.insert(mono.end(), e.begin(), e.end());
  return Poly{{mono, c}};
}

Poly multiply(const Poly& a, const Poly& b) {
  int cap = 0;
  for (const auto& [m, c] : a) cap = std::max(cap, degree(m));
  int cap_b = 0;
  for (const auto& [m, c] : b) cap_b = std::max(cap_b, degree(m));
  return mul(a, b, cap + cap_b);
}

Poly plus(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b) add(out, m, c);
  return out;
}

Poly scaled(const Poly& a, const mpq_class& c) {
  Poly out;
  for (const auto& [m, x] : a) add(out, m, x * c);
  return out;
}

mpq_class integrate(const Poly& f, const Setup& s) {
  if (s.n < 1 || s.kappa < 1) throw std::invalid_argument("bad setup");
  const std::size_t nv = static_cast<std::size_t>(s.kappa) + 1;
  const int r = s.n - 1;  // rank V_0 = n for every supported geometry
  auto dim = [&](int i) { return s.n + i * r; };

  // c(E_i) for E_i = V_i (x) L_i, i = 0..kappa-1, each truncated to dim X_i.
  std::vector<Poly> chern;
  {
    Poly c0;
    const auto cv = chern_v0(s);
    for (std::size_t j = 0; j < cv.size(); ++j) add(c0, unit(nv, 0, static_cast<int>(j)), cv[j]);
    chern.push_back(c0);
  }
  for (int i = 1; i < s.kappa; ++i) {
    // c(E_i) = c(E_{i-1}) (1 + v_{i-1} - 2 v_i) / (1 - v_i)
    const int cap = dim(i);
    Poly numer{{Mono(nv, 0), 1}};
    add(numer, unit(nv, static_cast<std::size_t>(i)), -2);
    if (i > 1) add(numer, unit(nv, static_cast<std::size_t>(i - 1)), 1);
    Poly geo;
    for (int k = 0; k <= cap; ++k) add(geo, unit(nv, static_cast<std::size_t>(i), k), 1);
    chern.push_back(mul(mul(chern.back(), numer, cap), geo, cap));
  }

  Poly current = f;
  for (int i = s.kappa; i >= 1; --i) {
    const auto vi = static_cast<std::size_t>(i);
    const int cap = dim(i - 1);
    const Poly& c = chern[static_cast<std::size_t>(i - 1)];
    std::vector<Poly> cj;
    for (int j = 0; j <= r + 1; ++j) cj.push_back(part(c, j));

    // Group current by the power of v_i.
    std::map<int, Poly> by_power;
    int max_power = 0;
    for (const auto& [m, coeff] : current) {
      Mono rest = m;
      rest[vi] = 0;
      add(by_power[m[vi]], rest, coeff);
      max_power = std::max(max_power, m[vi]);
    }

    // rem[k] = v^k reduced modulo sum_j c_j v^{r+1-j}, as coefficients of
    // v^0..v^r; pushforward of v^k is the v^r coefficient.
    std::vector<Poly> rem(static_cast<std::size_t>(r) + 1);
    rem[0] = Poly{{Mono(nv, 0), 1}};
    std::vector<Poly> pushed;
    for (int k = 0; k <= max_power; ++k) {
      if (k > 0) {
        // multiply by v
        Poly top = rem[static_cast<std::size_t>(r)];
        for (int a = r; a >= 1; --a) rem[static_cast<std::size_t>(a)] = rem[static_cast<std::size_t>(a - 1)];
        rem[0].clear();
        // v^{r+1} = -sum_{j=1}^{r+1} c_j v^{r+1-j}
        for (int j = 1; j <= r + 1; ++j) {
          Poly t = mul(top, cj[static_cast<std::size_t>(j)], cap);
          for (auto& [m, coeff] : t) add(rem[static_cast<std::size_t>(r + 1 - j)], m, -coeff);
        }
      }
      pushed.push_back(truncate(rem[static_cast<std::size_t>(r)], cap));
    }

    Poly next;
    for (const auto& [k, alpha] : by_power) {
      for (const auto& [m, coeff] : mul(alpha, pushed[static_cast<std::size_t>(k)], cap)) {
        add(next, m, coeff);
      }
    }
    current = std::move(next);
  }

  mpq_class total = 0;
  for (const auto& [m, coeff] : current) {
    if (m[0] == s.n && degree(m) == s.n) total += coeff * top_pairing(s);
  }
  return total;
}

}  // namespace oracle
