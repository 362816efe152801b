// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "qtwist/lfunc.hpp"

#include <unsupported/Eigen/Polynomials>

#include <cmath>
#include <limits>

namespace qtw {

namespace {

mpz_class qpow(std::uint32_t q, int n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, static_cast<unsigned long>(n));
  return r;
}

// Four smallest-degree twists of the given parity.
std::vector<Poly> calibration_twists(const CurveModel& E, int parity) {
  const Field& F = E.F;
  for (int d = parity == 1 ? 1 : 2; d <= 12; d += 2) {
    std::vector<Poly> out;
    for_each_monic(F, d, [&](const Poly& D) {
      if (out.size() < 4 && is_squarefree(F, D) && gcd(F, D, E.delta).degree() == 0) out.push_back(D);
    });
    if (out.size() == 4) return out;
  }
  throw std::invalid_argument("no twists available for calibration");
}

int search_bound(const CurveModel& E, int deg_D) { return E.M.degree() + 2 * E.A.degree() + 2 * deg_D; }

}  // namespace

LContext::LContext(CurveModel E, std::shared_ptr<const MonicSieve> S)
    : E_(std::move(E)), S_(std::move(S)), H_(E_, *S_), K_(E_.F) {}

LContext::LContext(CurveModel E, std::shared_ptr<const MonicSieve> S, std::vector<std::int64_t> traces)
    : E_(std::move(E)), S_(std::move(S)), H_(E_, *S_, std::move(traces)), K_(E_.F) {}

std::vector<mpz_class> LContext::direct_from_chi(const std::vector<std::int8_t>& chi, int nmax) const {
  if (nmax > S_->max_deg()) throw std::out_of_range("direct summation beyond sieve degree");
  std::vector<mpz_class> b(nmax + 1);
  const auto& at = H_.values();
  for (int n = 0; n <= nmax; ++n) {
    __int128 s = 0;
    for (std::uint32_t id = S_->begin(n); id < S_->end(n); ++id) s += at[id] * chi[id];
    // Values stay far below 2^63 at sieve sizes that fit in memory.
    b[n] = static_cast<long>(s);
  }
  return b;
}

std::vector<mpz_class> LContext::direct(const Poly& D, int nmax) const {
  std::vector<std::int8_t> chi;
  S_->twist_character(K_, SmallPoly::from(D), nmax, chi);
  return direct_from_chi(chi, nmax);
}

int calibration_degree(const CurveModel& E, int parity) {
  return search_bound(E, calibration_twists(E, parity).front().degree());
}

Calibration calibrate_degree(const LContext& ctx, int parity) {
  const CurveModel& E = ctx.curve();
  const std::uint32_t q = E.F.p();
  Calibration cal;
  cal.parity = parity;
  cal.twists = calibration_twists(E, parity);
  const int bound = search_bound(E, cal.twists.front().degree());
  if (bound > ctx.sieve().max_deg())
    throw std::invalid_argument("sieve degree " + std::to_string(ctx.sieve().max_deg()) +
                                " below calibration bound " + std::to_string(bound));
  bool first = true;
  for (const Poly& D : cal.twists) {
    auto b = ctx.direct(D, bound);
    int N = bound;
    while (N > 0 && b[N] == 0) --N;
    if (N == bound) throw IntegrityError("twist " + to_string(D) + ": no vanishing beyond the search bound");
    mpz_class qN = qpow(q, N);
    int eps;
    if (b[N] == qN) eps = 1;
    else if (b[N] == -qN) eps = -1;
    else throw IntegrityError("twist " + to_string(D) + ": leading coefficient is not +-q^N");
    LPolynomial L{b, N, eps, D};
    L.b.resize(N + 1);
    if (!satisfies_symmetry(L, q))
      throw IntegrityError("twist " + to_string(D) + ": coefficients violate the functional equation");
    const int n_eff = N - 2 * D.degree();
    const int sign_base = eps * quadratic_symbol(E.F, D, E.M);
    if (first) {
      cal.n_eff = n_eff;
      cal.sign_base = sign_base;
      first = false;
    } else if (n_eff != cal.n_eff || sign_base != cal.sign_base) {
      throw IntegrityError("calibration unstable at twist " + to_string(D));
    }
  }
  if (cal.n_eff != E.n_frak)
    cal.warning = "effective degree " + std::to_string(cal.n_eff) + " differs from formula value " +
                  std::to_string(E.n_frak);
  return cal;
}

void validate_twist(const LContext& ctx, const Calibration& cal, const Poly& D) {
  const CurveModel& E = ctx.curve();
  if (!D.is_monic()) throw std::invalid_argument("twist D must be monic");
  if (D.degree() < 1) throw std::invalid_argument("twist D must have positive degree");
  if (!is_squarefree(E.F, D)) throw std::invalid_argument("twist D must be square-free");
  if (gcd(E.F, D, E.delta).degree() != 0) throw std::invalid_argument("twist D must be coprime to the discriminant");
  if (D.degree() % 2 != cal.parity) throw std::invalid_argument("twist degree parity does not match the calibration");
}

int twist_sign(const LContext& ctx, const Calibration& cal, const Poly& D) {
  return cal.sign_base * quadratic_symbol(ctx.field(), D, ctx.curve().M);
}

bool satisfies_symmetry(const LPolynomial& L, std::uint32_t q) {
  const int N = L.N;
  if (static_cast<int>(L.b.size()) != N + 1) return false;
  for (int n = 0; n <= N; ++n) {
    const int e = N - 2 * n;
    if (e >= 0) {
      if (L.b[N - n] != L.epsilon * qpow(q, e) * L.b[n]) return false;
    } else if (L.b[N - n] * qpow(q, -e) != L.epsilon * L.b[n]) {
      return false;
    }
  }
  return true;
}

LPolynomial compute_l_polynomial(const LContext& ctx, const Calibration& cal, const Poly& D, LMode mode) {
  validate_twist(ctx, cal, D);
  const std::uint32_t q = ctx.field().p();
  LPolynomial L;
  L.D = D;
  L.N = cal.n_eff + 2 * D.degree();
  L.epsilon = twist_sign(ctx, cal, D);
  const int N = L.N;
  if (mode == LMode::Oracle) {
    auto b = ctx.direct(D, N + 2);
    for (int n = N + 1; n <= N + 2; ++n)
      if (b[n] != 0) throw IntegrityError("twist " + to_string(D) + ": nonzero coefficient beyond degree N");
    b.resize(N + 1);
    L.b = std::move(b);
    if (!satisfies_symmetry(L, q))
      throw IntegrityError("twist " + to_string(D) + ": oracle coefficients violate the functional equation");
    return L;
  }
  const int K = (N + 1) / 2;
  auto b = ctx.direct(D, K);
  L.b.assign(N + 1, 0);
  for (int n = 0; n <= K; ++n) L.b[n] = b[n];
  for (int n = 0; n < N - K; ++n) L.b[N - n] = L.epsilon * qpow(q, N - 2 * n) * b[n];
  bool overlap_ok = true;
  if (N % 2 == 1) overlap_ok = b[K] == L.epsilon * qpow(q, 1) * b[K - 1];
  else if (L.epsilon == -1) overlap_ok = b[K] == 0;
  if (!overlap_ok) throw IntegrityError("twist " + to_string(D) + ": central coefficient check failed");
  return L;
}

mpq_class central_value(const LPolynomial& L, std::uint32_t q) {
  mpz_class num = 0;
  // sum b_n q^{N-n} over q^N.
  for (int n = 0; n <= L.N; ++n) num += L.b[n] * qpow(q, L.N - n);
  mpq_class v(num, qpow(q, L.N));
  v.canonicalize();
  return v;
}

mpq_class central_derivative(const LPolynomial& L, std::uint32_t q) {
  mpz_class num = 0;
  for (int n = 0; n <= L.N; ++n) num -= n * L.b[n] * qpow(q, L.N - n);
  mpq_class v(num, qpow(q, L.N));
  v.canonicalize();
  return v;
}

mpq_class central_value_two_sum(const LPolynomial& L, std::uint32_t q) {
  const int K1 = L.N / 2, K2 = (L.N - 1) / 2;
  mpz_class num = 0;
  for (int n = 0; n <= K1; ++n) num += L.b[n] * qpow(q, K1 - n);
  for (int n = 0; n <= K2; ++n) num += L.epsilon * L.b[n] * qpow(q, K1 - n);
  mpq_class v(num, qpow(q, K1));
  v.canonicalize();
  return v;
}

mpq_class central_derivative_weighted(const LPolynomial& L, std::uint32_t q) {
  const int K = (L.N - 1) / 2;
  mpz_class num = 0;
  for (int n = 0; n <= K; ++n) num += (L.N - 2 * n) * L.b[n] * qpow(q, K - n);
  mpq_class v(num, qpow(q, K));
  v.canonicalize();
  return v;
}

int analytic_rank(const LPolynomial& L, std::uint32_t q) {
  std::vector<mpz_class> B = L.b;
  int r = 0;
  while (B.size() >= 2) {
    const std::size_t n = B.size() - 1;
    std::vector<mpz_class> C(n);
    C[0] = -B[0];
    for (std::size_t i = 1; i < n; ++i) C[i] = q * C[i - 1] - B[i];
    if (B[n] != q * C[n - 1]) break;
    B = std::move(C);
    ++r;
  }
  return r;
}

namespace {

// Divides by (y - root) when exact; returns false otherwise.
bool deflate(std::vector<mpq_class>& c, int root) {
  const std::size_t n = c.size() - 1;
  if (n == 0) return false;
  std::vector<mpq_class> out(n);
  mpq_class acc = c[n];
  for (std::size_t i = n; i-- > 0;) {
    out[i] = acc;
    acc = c[i] + acc * root;
  }
  if (acc != 0) return false;
  c = std::move(out);
  return true;
}

}  // namespace

RootDiagnostic root_diagnostic(const LPolynomial& L, std::uint32_t q) {
  RootDiagnostic out;
  // Coefficients in y = q x.
  std::vector<mpq_class> c(L.N + 1);
  for (int n = 0; n <= L.N; ++n) {
    c[n] = mpq_class(L.b[n], qpow(q, n));
    c[n].canonicalize();
  }
  while (deflate(c, 1)) ++out.rank;
  while (deflate(c, -1)) ++out.minus_one;
  for (int i = 0; i < out.rank; ++i) out.roots.emplace_back(1.0 / q, 0.0);
  for (int i = 0; i < out.minus_one; ++i) out.roots.emplace_back(-1.0 / q, 0.0);
  const int n = static_cast<int>(c.size()) - 1;
  if (n >= 1) {
    Eigen::VectorXd coeff(n + 1);
    for (int i = 0; i <= n; ++i) coeff[i] = c[i].get_d();
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
    solver.compute(coeff);
    for (int k = 0; k < solver.roots().size(); ++k) {
      std::complex<long double> y(solver.roots()[k].real(), solver.roots()[k].imag());
      for (int it = 0; it < 8; ++it) {
        std::complex<long double> f = 0, df = 0;
        for (int i = n; i >= 0; --i) {
          df = df * y + f;
          f = f * y + static_cast<long double>(coeff[i]);
        }
        if (std::abs(df) == 0) break;
        y -= f / df;
      }
      std::complex<double> yd(static_cast<double>(y.real()), static_cast<double>(y.imag()));
      out.roots.push_back(yd / static_cast<double>(q));
      out.max_deviation = std::max(out.max_deviation, std::abs(std::abs(yd) - 1.0));
    }
  }
  return out;
}

LogBound check_log_l_bound(const LContext& ctx, const LPolynomial& L, int h, std::complex<double> z) {
  const int m = L.N;
  if (h < 1 || h > m) throw std::invalid_argument("h must satisfy 1 <= h <= m");
  if (z.real() < 0) throw std::invalid_argument("Re z must be non-negative");
  const MonicSieve& S = ctx.sieve();
  if (h > S.max_deg()) throw std::out_of_range("h beyond sieve degree");
  const std::uint32_t q = ctx.field().p();
  const long double lq = std::log(static_cast<long double>(q));

  std::complex<long double> x = std::exp(-(1.0L + std::complex<long double>(z.real(), z.imag())) * lq);
  std::complex<long double> val = 0, xn = 1;
  for (int n = 0; n <= L.N; ++n) {
    val += static_cast<long double>(L.b[n].get_d()) * xn;
    xn *= x;
  }
  double lhs = std::abs(val) == 0 ? -std::numeric_limits<double>::infinity()
                                  : static_cast<double>(std::log(std::abs(val)));

  const SmallPoly Ds = SmallPoly::from(L.D);
  const std::complex<long double> zz(z.real(), z.imag());
  std::complex<long double> sum = 0;
  const std::size_t np = S.prime_count_upto(h);
  for (std::size_t r = 0; r < np; ++r) {
    const int d = S.degree(S.primes()[r]);
    const int chi = ctx.kernel()(Ds, S.prime_polys()[r]);
    if (chi == 0) continue;
    const bool good = !ctx.hecke().bad_rank(r);
    const long double lambda =
        static_cast<long double>(ctx.hecke().trace(r)) / std::pow(static_cast<long double>(q), 0.5L * d);
    long double s_prev = 2, s_cur = lambda;  // alpha^j + beta^j for j = 0, 1
    long double chij = chi;
    for (int j = 1; j * d <= h; ++j) {
      const long double sj = good ? s_cur : std::pow(lambda, j);
      const long double weight = static_cast<long double>(h - j * d) / j;
      const std::complex<long double> expo = -(long double)(j * d) * lq * (0.5L + zz) - (long double)(j * d) / h;
      sum += chij * sj * weight * std::exp(expo);
      const long double s_next = lambda * s_cur - s_prev;
      s_prev = s_cur;
      s_cur = s_next;
      chij *= chi;
    }
  }
  const double rhs = static_cast<double>(static_cast<long double>(m) / h + sum.real() / h);
  return {lhs, rhs, lhs <= rhs + 1e-9};
}

std::string to_string(const mpq_class& v) {
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

}  // namespace qtw
