#pragma once

// Direct two-time double sums over a pair of indicator paths, written out
// term by term with no use of the absorbing identities. Paths have entries
// n[0..t] with n[0] = 0.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cdsnet/two_time.hpp"

namespace brute {

using Path = std::vector<int>;
using I64 = std::int64_t;

// absorbing path that defaults in month d (d > t: never)
inline Path absorbing(int d, int t) {
  Path n(t + 1, 0);
  for (int tau = 1; tau <= t; ++tau) n[tau] = tau >= d ? 1 : 0;
  return n;
}

inline Path random_absorbing(std::mt19937_64& gen, int t) {
  std::uniform_int_distribution<int> d(1, t + 1);
  return absorbing(d(gen), t);
}

inline int jump(const Path& n, int tau) { return n[tau] - n[tau - 1]; }
inline double g(double eps, int tau) { return std::pow(1.0 + eps, tau - 1); }

inline double eps_eps(const Path& j, double eps, int t) {
  double v = 0.0;
  for (int a = 1; a <= t; ++a)
    for (int b = 1; b <= t; ++b) v += eps * eps * g(eps, a) * g(eps, b) * (1 - j[a]) * (1 - j[b]);
  return v;
}

inline I64 fee_fee(const Path& j, const Path& k, I64 f0, I64 f2, int t) {
  I64 v = 0;
  for (int a = 1; a <= t; ++a) {
    for (int b = 1; b <= t; ++b) v += f0 * f0 * (1 - j[a]) * (1 - k[a]) * (1 - j[b]) * (1 - k[b]);
    v += f2 * (1 - j[a]) * (1 - k[a]);
  }
  return v;
}

// fee at a on the (j,k) contract, interest at b on the loan to j
inline double fee_eps(const Path& j, const Path& k, double f0, double eps, int t) {
  double v = 0.0;
  for (int a = 1; a <= t; ++a)
    for (int b = 1; b <= t; ++b) v += f0 * (1 - j[a]) * (1 - k[a]) * eps * g(eps, b) * (1 - j[b]);
  return v;
}

inline double u_contagion_eps(const Path& j, double eps, int t) {
  double v = 0.0;
  for (int b = 1; b <= t; ++b) v += eps * g(eps, b) * j[t] * (1 - j[b]);
  return v;
}

inline I64 hb_cc(const Path& j, const Path& k, int t) {
  I64 v = 0;
  for (int a = 1; a <= t; ++a)
    for (int b = 1; b <= t; ++b) v += jump(j, a) * jump(j, b) * k[a] * k[b];
  return v;
}

inline I64 hb_cf(const Path& j, const Path& k, I64 f0, int t) {
  I64 v = 0;
  for (int a = 1; a <= t; ++a)
    for (int b = 1; b <= t; ++b) v += f0 * jump(j, a) * k[a] * (1 - j[b]) * (1 - k[b]);
  return v;
}

inline double hb_ceps(const Path& j, const Path& k, double eps, int t) {
  double v = 0.0;
  for (int a = 1; a <= t; ++a)
    for (int b = 1; b <= t; ++b) v += jump(j, a) * k[a] * eps * g(eps, b) * (1 - j[b]);
  return v;
}

inline I64 hs_cc(const Path& j, int t) {
  I64 v = 0;
  for (int a = 1; a <= t; ++a)
    for (int b = 1; b <= t; ++b) v += jump(j, a) * jump(j, b);
  return v;
}

// k is the protection buyer
inline I64 hs_cf(const Path& j, const Path& k, I64 f0, int t) {
  I64 v = 0;
  for (int a = 1; a <= t; ++a)
    for (int b = 1; b <= t; ++b) v += f0 * jump(j, a) * (1 - j[b]) * (1 - k[b]);
  return v;
}

inline I64 sb_cc(const Path& j, const Path& k, int t) {
  I64 v = 0;
  for (int a = 1; a <= t; ++a)
    for (int b = 1; b <= t; ++b) v += jump(j, a) * jump(j, b) * (1 - k[a]) * (1 - k[b]);
  return v;
}

inline I64 sb_cf(const Path& j, const Path& k, I64 f0, int t) {
  I64 v = 0;
  for (int a = 1; a <= t; ++a)
    for (int b = 1; b <= t; ++b) v += f0 * jump(j, a) * (1 - k[a]) * (1 - j[b]) * (1 - k[b]);
  return v;
}

inline I64 ss_cc(const Path& j, int t) { return hs_cc(j, t); }

inline I64 ss_cf(const Path& j, const Path& k, I64 f0, int t) {
  I64 v = 0;
  for (int a = 1; a <= t; ++a)
    for (int b = 1; b <= t; ++b) v += f0 * jump(j, a) * (1 - j[b]) * (1 - k[b]);
  return v;
}

struct Tally {
  long checks = 0;
  long mismatches = 0;
  double worst = 0.0;  // largest floating point deviation
  std::string first_failure;

  void exact(const char* what, I64 reduced, I64 direct) {
    ++checks;
    if (reduced != direct) {
      if (mismatches++ == 0)
        first_failure = std::string(what) + ": " + std::to_string(reduced) + " vs " + std::to_string(direct);
    }
  }
  void close(const char* what, double reduced, double direct, double tol) {
    ++checks;
    const double d = std::abs(reduced - direct);
    worst = std::max(worst, d);
    if (!(d <= tol)) {
      if (mismatches++ == 0)
        first_failure = std::string(what) + ": " + std::to_string(reduced) + " vs " + std::to_string(direct);
    }
  }
};

// All thirteen reductions against their double sums for one path pair and
// every t = 1..T.
inline void check_pair(const Path& j, const Path& k, double eps, Tally& tally, double tol = 1e-12) {
  namespace tt = cdsnet::two_time;
  const int T = static_cast<int>(j.size()) - 1;
  const tt::PathCorrelator c{&j, &k};
  const tt::PathCorrelatorF cf{&j, &k};
  const I64 f0 = 3, f2 = 7;  // integer stand-ins keep the algebra exact
  const double f0d = 0.0008;
  for (int t = 1; t <= T; ++t) {
    tally.close("eps-eps", tt::eps_eps(cf, eps, t), eps_eps(j, eps, t), tol);
    tally.exact("fee-fee", tt::fee_fee(c, f0, f2, t), fee_fee(j, k, f0, f2, t));
    tally.close("fee-eps", tt::fee_eps(cf, f0d, eps, t), fee_eps(j, k, f0d, eps, t), tol);
    tally.close("u c-eps", tt::u_contagion_eps(cf, eps, t), u_contagion_eps(j, eps, t), tol);
    tally.exact("hb c-c", tt::hb_cc(c, t), hb_cc(j, k, t));
    tally.exact("hb c-f", tt::hb_cf(c, f0, t), hb_cf(j, k, f0, t));
    tally.close("hb c-eps", tt::hb_ceps(cf, eps, t), hb_ceps(j, k, eps, t), tol);
    tally.exact("hs c-c", tt::hs_cc(c, t), hs_cc(j, t));
    tally.exact("hs c-f", tt::hs_cf(c, f0, t), hs_cf(j, k, f0, t));
    tally.exact("sb c-c", tt::sb_cc(c, t), sb_cc(j, k, t));
    tally.exact("sb c-f", tt::sb_cf(c, f0, t), sb_cf(j, k, f0, t));
    tally.exact("ss c-c", tt::ss_cc(c, t), ss_cc(j, t));
    tally.exact("ss c-f", tt::ss_cf(c, f0, t), ss_cf(j, k, f0, t));
  }
}

}  // namespace brute
