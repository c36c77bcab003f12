#pragma once

// Two-time indicator correlations reduced to one-time quantities.
//
// Every reduction is written against a correlator `c` exposing
//   c.ref(a)      = <n_j,a>          (reference entity / borrower j)
//   c.other(b)    = <n_k,b>          (third party k: seller for buyers, buyer for sellers)
//   c.joint(a, b) = <n_j,a n_k,b>
// with value_type the scalar used for accumulation. Times run 0..t, with
// index 0 the initial state. The owner i is assumed alive through t.
//
// MeanField factorizes the joint term (distinct nodes in the sparse limit);
// PathCorrelator evaluates a single pair of absorbing indicator paths, which
// makes the reductions exact algebraic identities that can be checked
// against brute-force double sums.

#include <cstdint>
#include <vector>

namespace cdsnet::two_time {

struct MeanField {
  using value_type = double;
  const std::vector<double>* r;
  const std::vector<double>* o;

  double ref(int a) const { return (*r)[a]; }
  double other(int b) const { return (*o)[b]; }
  double joint(int a, int b) const { return (*r)[a] * (*o)[b]; }
};

struct PathCorrelator {
  using value_type = std::int64_t;
  const std::vector<int>* nj;
  const std::vector<int>* nk;

  std::int64_t ref(int a) const { return (*nj)[a]; }
  std::int64_t other(int b) const { return (*nk)[b]; }
  std::int64_t joint(int a, int b) const { return std::int64_t{(*nj)[a]} * (*nk)[b]; }
};

// Same path pair, accumulated in double so that interest factors can enter.
struct PathCorrelatorF {
  using value_type = double;
  const std::vector<int>* nj;
  const std::vector<int>* nk;

  double ref(int a) const { return (*nj)[a]; }
  double other(int b) const { return (*nk)[b]; }
  double joint(int a, int b) const { return double((*nj)[a]) * (*nk)[b]; }
};

// (1+eps)^(tau-1)
inline double growth(double eps, int tau) {
  double g = 1.0;
  for (int k = 1; k < tau; ++k) g *= 1.0 + eps;
  return g;
}

// <(1-n_j,a)(1-n_k,b)>
template <class C>
auto alive_joint(const C& c, int a, int b) {
  return typename C::value_type(1) - c.ref(a) - c.other(b) + c.joint(a, b);
}

// <(n_j,a - n_j,a-1) n_k,b>
template <class C>
auto jump_joint(const C& c, int a, int b) {
  return c.joint(a, b) - c.joint(a - 1, b);
}

// <(n_j,a - n_j,a-1)(1 - n_k,b)>
template <class C>
auto jump_alive(const C& c, int a, int b) {
  return (c.ref(a) - c.ref(a - 1)) - jump_joint(c, a, b);
}

// interest-interest: lender i, borrower j
template <class C>
double eps_eps(const C& c, double eps, int t) {
  double v = 0.0;
  double g = 1.0;
  for (int tau = 1; tau <= t; ++tau) {
    v += g * (g + g * (1.0 + eps) - 2.0) * (1.0 - double(c.ref(tau)));
    g *= 1.0 + eps;
  }
  return eps * v;
}

// fee-fee, conditioned on the owner alive
template <class C, class T>
auto fee_fee(const C& c, T f0, T f2, int t) {
  using V = decltype(T{} * typename C::value_type{});
  V v{};
  for (int tau = 1; tau <= t; ++tau)
    v += (f0 * f0 * T(2 * tau - 1) + f2) * alive_joint(c, tau, tau);
  return v;
}

// fee-interest, conditioned on the owner alive
template <class C>
double fee_eps(const C& c, double f0, double eps, int t) {
  double v = 0.0;
  double g = 1.0;
  for (int tau = 1; tau <= t; ++tau) {
    double inner = 0.0;
    for (int tp = 1; tp <= tau; ++tp) inner += double(alive_joint(c, tau, tp));
    v += (g - 1.0) * double(alive_joint(c, tau, tau)) + eps * g * inner;
    g *= 1.0 + eps;
  }
  return f0 * v;
}

// unhedged loan: contagion-interest
template <class C>
double u_contagion_eps(const C& c, double eps, int t) {
  double v = 0.0;
  double g = 1.0;
  const double nt = double(c.ref(t));
  for (int tau = 1; tau <= t; ++tau) {
    v += g * (nt - double(c.ref(tau)));
    g *= 1.0 + eps;
  }
  return eps * v;
}

// hedged buyer: contagion-contagion
template <class C>
auto hb_cc(const C& c, int t) {
  typename C::value_type v{};
  for (int tau = 1; tau <= t; ++tau) v += jump_joint(c, tau, tau);
  return v;
}

// hedged buyer: contagion-fee
template <class C, class T>
auto hb_cf(const C& c, T f0, int t) {
  typename C::value_type v{};
  for (int tau = 1; tau <= t; ++tau)
    for (int tp = 1; tp < tau; ++tp) v += jump_joint(c, tau, tau) - jump_joint(c, tau, tp);
  return f0 * v;
}

// hedged buyer: contagion-interest
template <class C>
double hb_ceps(const C& c, double eps, int t) {
  double v = 0.0;
  double g = 1.0;
  for (int tau = 1; tau <= t; ++tau) {
    v += double(jump_joint(c, tau, tau)) * (g - 1.0);
    g *= 1.0 + eps;
  }
  return v;
}

// hedged seller: contagion-contagion
template <class C>
auto hs_cc(const C& c, int t) {
  return c.ref(t);
}

// hedged seller: contagion-fee; `other` is the protection buyer
template <class C, class T>
auto hs_cf(const C& c, T f0, int t) {
  typename C::value_type v{};
  for (int tau = 1; tau <= t; ++tau)
    for (int tp = 1; tp < tau; ++tp) v += jump_alive(c, tau, tp);
  return f0 * v;
}

// speculative buyer: contagion-contagion
template <class C>
auto sb_cc(const C& c, int t) {
  typename C::value_type v{};
  for (int tau = 1; tau <= t; ++tau) v += jump_alive(c, tau, tau);
  return v;
}

// speculative buyer: contagion-fee
template <class C, class T>
auto sb_cf(const C& c, T f0, int t) {
  typename C::value_type v{};
  for (int tau = 1; tau <= t; ++tau) v += jump_alive(c, tau, tau) * typename C::value_type(tau - 1);
  return f0 * v;
}

// speculative seller: contagion-contagion
template <class C>
auto ss_cc(const C& c, int t) {
  return c.ref(t);
}

// speculative seller: contagion-fee; `other` is the protection buyer
template <class C, class T>
auto ss_cf(const C& c, T f0, int t) {
  typename C::value_type v{};
  for (int tau = 1; tau < t; ++tau) {
    // <(n_j,t - n_j,tau)(1 - n_k,tau)>
    v += (c.ref(t) - c.ref(tau)) - (c.joint(t, tau) - c.joint(tau, tau));
  }
  return f0 * v;
}

}  // namespace cdsnet::two_time
