#include "cycint/real.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace cycint {

namespace {

thread_local long g_working_bits = 0;

long default_bits() {
  static const long bits = [] {
    if (const char* env = std::getenv("CYCINT_PRECISION")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v >= 64) return v;
    }
    return kDefaultPrecisionBits;
  }();
  return bits;
}

long wider(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

long working_precision() { return g_working_bits > 0 ? g_working_bits : default_bits(); }

PrecisionScope::PrecisionScope(long bits) : saved_(g_working_bits) {
  if (bits < MPFR_PREC_MIN) throw std::invalid_argument("precision too small");
  g_working_bits = bits;
}

PrecisionScope::~PrecisionScope() { g_working_bits = saved_; }

Real::Real(Uninit, long bits) { mpfr_init2(v_, bits); }

Real::Real() : Real(Uninit{}, working_precision()) { mpfr_set_zero(v_, 1); }

Real::Real(double v) : Real(Uninit{}, working_precision()) { mpfr_set_d(v_, v, MPFR_RNDN); }

Real::Real(long v) : Real(Uninit{}, working_precision()) { mpfr_set_si(v_, v, MPFR_RNDN); }

Real::Real(const Int& v) : Real(Uninit{}, working_precision()) {
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const Int& num, const Int& den) : Real(Uninit{}, working_precision()) {
  mpq_class q(num, den);
  q.canonicalize();
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const std::string& s) : Real(Uninit{}, working_precision()) {
  if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a number: " + s);
  }
}

Real::Real(const Real& o) : Real(Uninit{}, o.precision()) { mpfr_set(v_, o.v_, MPFR_RNDN); }

Real::Real(Real&& o) noexcept : Real(Uninit{}, MPFR_PREC_MIN) { mpfr_swap(v_, o.v_); }

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    if (precision() < o.precision()) mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::with_precision(long bits) {
  Real r(Uninit{}, bits);
  mpfr_set_zero(r.v_, 1);
  return r;
}

Real Real::rounded(const Real& x, long bits) {
  Real r(Uninit{}, bits);
  mpfr_set(r.v_, x.v_, MPFR_RNDN);
  return r;
}

std::string Real::str(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (digits <= 0) digits = static_cast<int>(precision() * 0.30103) + 1;
  char* buf = nullptr;
  const std::string fmt = "%." + std::to_string(digits) + "Rg";
  mpfr_asprintf(&buf, fmt.c_str(), v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Real& Real::operator+=(const Real& o) {
  if (precision() < o.precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  if (precision() < o.precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  if (precision() < o.precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  if (precision() < o.precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(Uninit{}, precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, const Real& b) {
  Real r(Real::Uninit{}, wider(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(Real::Uninit{}, wider(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(Real::Uninit{}, wider(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(Real::Uninit{}, wider(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.str(30); }

namespace {

template <typename Fn>
Real unary(const Real& x, Fn fn) {
  Real r = Real::with_precision(x.precision());
  fn(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real tanh(const Real& x) { return unary(x, mpfr_tanh); }
Real cosh(const Real& x) { return unary(x, mpfr_cosh); }

Real floor(const Real& x) {
  Real r = Real::with_precision(x.precision());
  mpfr_floor(r.get(), x.get());
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r = Real::with_precision(std::max(x.precision(), y.precision()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Int round_to_int(const Real& x) {
  Int r;
  mpfr_get_z(r.get_mpz_t(), x.get(), MPFR_RNDNA);
  return r;
}

Int floor_to_int(const Real& x) {
  Int r;
  mpfr_get_z(r.get_mpz_t(), x.get(), MPFR_RNDD);
  return r;
}

Real pi(long bits) {
  Real r = Real::with_precision(bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real ldexp_one(long e) {
  Real r(1L);
  mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
  return r;
}

Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt of negative integer");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("division by zero");
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

std::string to_string(const Int& n) { return n.get_str(10); }

Int parse_int(const std::string& s) {
  Int r;
  std::string t = s;
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  if (t.empty() || r.set_str(t, 10) != 0) throw std::invalid_argument("not an integer: " + s);
  return r;
}

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

Complex& Complex::operator*=(const Real& s) {
  re *= s;
  im *= s;
  return *this;
}

Complex& Complex::operator/=(const Complex& o) { return *this *= reciprocal(o); }

Complex conj(const Complex& z) { return Complex(z.re, -z.im); }

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Real abs(const Complex& z) {
  Real r = Real::with_precision(std::max(z.re.precision(), z.im.precision()));
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

Complex cis(const Real& theta) {
  Real s = Real::with_precision(theta.precision());
  Real c = Real::with_precision(theta.precision());
  mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
  return Complex(std::move(c), std::move(s));
}

Complex exp(const Complex& z) {
  Complex u = cis(z.im);
  u *= exp(z.re);
  return u;
}

Complex reciprocal(const Complex& z) {
  const Real n = norm(z);
  return Complex(z.re / n, -z.im / n);
}

}  // namespace cycint
