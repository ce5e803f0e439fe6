#pragma once

// Static combinatorial data for affine D(m,n): ambient coordinate space,
// simple roots, Cartan matrix, symmetrizers, the integral lattice with its
// 2-cocycle, and the symplectic-style pairing on C = P (+) P*.
//
// Everything lives in one ambient orthonormal space over Q(i): the basis is
// eps_0 .. eps_{n+m+1} with form(eps_a, eps_b) = delta_{ab}, and the
// negative-norm directions are represented as del_k = i * eps_{n+k}.  One
// bilinear form then induces the super form on roots, the positive lattice
// form, and the P-form.

#include <stdexcept>
#include <string>
#include <vector>

#include "toroidal/gauss_rational.hpp"

namespace toroidal {

struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct AmbientVector {
  std::vector<GaussRational> c;

  explicit AmbientVector(std::size_t dim = 0) : c(dim) {}

  friend AmbientVector operator+(const AmbientVector& a, const AmbientVector& b) {
    AmbientVector r(a.c.size());
    for (std::size_t k = 0; k < a.c.size(); ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
  }
  friend AmbientVector operator-(const AmbientVector& a, const AmbientVector& b) {
    AmbientVector r(a.c.size());
    for (std::size_t k = 0; k < a.c.size(); ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
  }
  AmbientVector operator-() const {
    AmbientVector r(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) r.c[k] = -c[k];
    return r;
  }
  AmbientVector scaled(const GaussRational& s) const {
    AmbientVector r(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) r.c[k] = c[k] * s;
    return r;
  }
};

// The standard orthonormal ambient form, extended bilinearly over Q(i).
inline GaussRational super_form(const AmbientVector& x, const AmbientVector& y) {
  if (x.c.size() != y.c.size())
    throw config_error("super_form: dimension mismatch");
  GaussRational s;
  for (std::size_t k = 0; k < x.c.size(); ++k) s += x.c[k] * y.c[k];
  return s;
}

// Integer vector over the lattice basis eps_1 .. eps_{m+n}.
struct LatticeVector {
  std::vector<int> c;

  LatticeVector() = default;
  explicit LatticeVector(std::size_t rank) : c(rank, 0) {}
  LatticeVector(std::initializer_list<int> v) : c(v) {}

  static LatticeVector unit(std::size_t rank, std::size_t a) {
    LatticeVector v(rank);
    v.c[a] = 1;
    return v;
  }

  bool is_zero() const {
    for (int x : c)
      if (x != 0) return false;
    return true;
  }
  friend LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
    LatticeVector r(a.c.size());
    for (std::size_t k = 0; k < a.c.size(); ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
  }
  friend LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
    LatticeVector r(a.c.size());
    for (std::size_t k = 0; k < a.c.size(); ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
  }
  LatticeVector operator-() const {
    LatticeVector r(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) r.c[k] = -c[k];
    return r;
  }
  friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
    return a.c == b.c;
  }
  friend bool operator<(const LatticeVector& a, const LatticeVector& b) {
    return a.c < b.c;
  }
};

// Positive-definite orthonormal form on L.
inline long long lattice_form(const LatticeVector& a, const LatticeVector& b) {
  long long s = 0;
  for (std::size_t k = 0; k < a.c.size(); ++k)
    s += static_cast<long long>(a.c[k]) * b.c[k];
  return s;
}

inline int lattice_parity(const LatticeVector& a) {
  long long s = 0;
  for (int x : a.c) s += x;
  return static_cast<int>(((s % 2) + 2) % 2);
}

// Element of C = P (+) P*.  p holds coordinates over the P-basis
// (cbar, eps_1, ..., eps_{m+n}); star marks membership in the dual copy.
struct CVector {
  bool star = false;
  std::vector<GaussRational> p;

  CVector() = default;
  CVector(bool st, std::vector<GaussRational> coords)
      : star(st), p(std::move(coords)) {}

  CVector starred() const { return {!star, p}; }
  CVector operator-() const {
    CVector r = *this;
    for (auto& x : r.p) x = -x;
    return r;
  }
  friend bool operator==(const CVector& a, const CVector& b) {
    return a.star == b.star && a.p == b.p;
  }
  friend bool operator<(const CVector& a, const CVector& b) {
    if (a.star != b.star) return a.star < b.star;
    if (a.p.size() != b.p.size()) return a.p.size() < b.p.size();
    for (std::size_t k = 0; k < a.p.size(); ++k) {
      if (a.p[k] != b.p[k]) return a.p[k] < b.p[k];
    }
    return false;
  }
};

struct RootSystemData {
  int m = 0, n = 0;
  int rank = 0;         // m + n, rank of the lattice L
  int num_nodes = 0;    // m + n + 1 simple roots (affine)
  int ambient_dim = 0;  // n + m + 2

  std::vector<AmbientVector> simple_roots;  // alpha_0 .. alpha_{m+n}
  AmbientVector theta, cbar, beta;
  std::vector<int> d;                       // symmetrizers
  std::vector<std::vector<int>> cartan;     // a_{ij}
  std::vector<int> node_parity;             // 1 for the odd node, else 0
  std::vector<std::vector<int>> form_ij;    // (alpha_i | alpha_j)

  // C = P (+) P*: basis index g in [0, 2*(m+n+1)).
  // g < m+n+1: unstarred; g == 0 is cbar, g == a is eps_a.
  int c_basis_count = 0;
  std::vector<std::vector<int>> c_pairing_table;  // <basis_g, basis_h>

  int p_dim() const { return rank + 1; }

  CVector c_basis(int g) const {
    bool st = g >= p_dim();
    int idx = st ? g - p_dim() : g;
    std::vector<GaussRational> coords(p_dim());
    coords[idx] = GaussRational(1);
    return {st, coords};
  }

  CVector eps_cvector(int a, bool star) const {  // a in 1..m+n
    std::vector<GaussRational> coords(p_dim());
    coords[a] = GaussRational(1);
    return {star, coords};
  }
  CVector cbar_cvector(bool star) const {
    std::vector<GaussRational> coords(p_dim());
    coords[0] = GaussRational(1);
    return {star, coords};
  }
  CVector beta_cvector(bool star) const {
    std::vector<GaussRational> coords(p_dim());
    coords[0] = GaussRational(-1);
    coords[1] = GaussRational(1);
    return {star, coords};
  }

  // The form on P: cbar is isotropic and orthogonal to every eps_a.
  GaussRational p_form(const std::vector<GaussRational>& a,
                       const std::vector<GaussRational>& b) const {
    GaussRational s;
    for (int k = 1; k < p_dim(); ++k) s += a[k] * b[k];
    return s;
  }

  // <u, v> on C: <b*, a> = (a, b) = -<a, b*>, same-copy pairings vanish.
  GaussRational c_pairing(const CVector& u, const CVector& v) const {
    if (u.star == v.star) return GaussRational(0);
    GaussRational f = p_form(u.p, v.p);
    return u.star ? f : -f;
  }

  // Bimultiplicative extension of F(eps_a, eps_b) = +1 if a <= b else -1.
  int cocycle(const LatticeVector& x, const LatticeVector& y) const {
    long long e = 0;
    for (int a = 1; a < rank; ++a)
      for (int b = 0; b < a; ++b)
        e += static_cast<long long>(x.c[a]) * y.c[b];
    return (((e % 2) + 2) % 2) == 0 ? 1 : -1;
  }

  AmbientVector ambient_of_lattice(const LatticeVector& v) const {
    AmbientVector r(ambient_dim);
    for (int a = 0; a < rank; ++a) r.c[a + 1] = GaussRational(v.c[a]);
    return r;
  }
};

// Builds all static data for type D(m,n)^(1); requires m >= 2, n >= 1.
inline RootSystemData build_system(int m, int n) {
  if (m < 2) throw config_error("type D(m,n) requires m > 1");
  if (n < 1) throw config_error("type D(m,n) requires n >= 1");

  RootSystemData sys;
  sys.m = m;
  sys.n = n;
  sys.rank = m + n;
  sys.num_nodes = m + n + 1;
  sys.ambient_dim = n + m + 2;

  auto eps = [&](int a) {
    AmbientVector v(sys.ambient_dim);
    v.c[a] = GaussRational(1);
    return v;
  };
  auto del = [&](int k) {  // del_k = i * eps_{n+k}, 1 <= k <= m+1
    AmbientVector v(sys.ambient_dim);
    v.c[n + k] = GaussRational::unit_i();
    return v;
  };

  sys.theta = eps(1).scaled(GaussRational(2));
  sys.cbar = eps(0) + del(m + 1);
  sys.beta = -sys.cbar + eps(1);

  sys.simple_roots.assign(sys.num_nodes, AmbientVector(sys.ambient_dim));
  sys.simple_roots[0] = sys.cbar - sys.theta;
  for (int i = 1; i <= n - 1; ++i) sys.simple_roots[i] = eps(i) - eps(i + 1);
  sys.simple_roots[n] = eps(n) - del(1);
  for (int i = 1; i <= m - 1; ++i)
    sys.simple_roots[n + i] = del(i) - del(i + 1);
  sys.simple_roots[n + m] = del(m - 1) + del(m);

  sys.d.assign(sys.num_nodes, 0);
  sys.d[0] = 2;
  for (int i = 1; i <= n; ++i) sys.d[i] = 1;
  for (int i = n + 1; i <= n + m; ++i) sys.d[i] = -1;

  sys.node_parity.assign(sys.num_nodes, 0);
  sys.node_parity[n] = 1;

  sys.form_ij.assign(sys.num_nodes, std::vector<int>(sys.num_nodes, 0));
  sys.cartan.assign(sys.num_nodes, std::vector<int>(sys.num_nodes, 0));
  for (int i = 0; i < sys.num_nodes; ++i) {
    for (int j = 0; j < sys.num_nodes; ++j) {
      GaussRational f = super_form(sys.simple_roots[i], sys.simple_roots[j]);
      std::int64_t fv = 0, av = 0;
      if (!f.im.is_zero() || !f.re.to_int(fv))
        throw config_error("non-integral root form");
      Rat q = f.re / Rat(sys.d[i]);
      if (!q.to_int(av)) throw config_error("non-integral Cartan entry");
      sys.form_ij[i][j] = static_cast<int>(fv);
      sys.cartan[i][j] = static_cast<int>(av);
    }
  }

  sys.c_basis_count = 2 * (sys.rank + 1);
  sys.c_pairing_table.assign(sys.c_basis_count,
                             std::vector<int>(sys.c_basis_count, 0));
  for (int g = 0; g < sys.c_basis_count; ++g) {
    for (int h = 0; h < sys.c_basis_count; ++h) {
      GaussRational v = sys.c_pairing(sys.c_basis(g), sys.c_basis(h));
      int iv = 0;
      if (v == GaussRational(1)) iv = 1;
      else if (v == GaussRational(-1)) iv = -1;
      else if (!v.is_zero()) throw config_error("unexpected basis pairing");
      sys.c_pairing_table[g][h] = iv;
    }
  }
  return sys;
}

}  // namespace toroidal
