#pragma once

// Exact rational scalar, rational intervals, combinatorial primitives,
// Taylor enclosures of exp and directed decimal rendering.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hypercert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arbitrary-precision rational kept in lowest terms with a positive
/// denominator. Equality is structural.
class Rat {
 public:
  Rat() = default;
  Rat(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(int v) : v_(v) {}   // NOLINT(google-explicit-constructor)
  explicit Rat(const mpz_class& z) : v_(z) {}
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  Rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw Error("zero denominator");
    v_.get_num() = num;
    v_.get_den() = den;
    v_.canonicalize();
  }
  Rat(long num, long den) : Rat(mpz_class(num), mpz_class(den)) {}

  /// Accepts "p/q", "-p/q", integers and exact decimals ("0.125", "-1e-9").
  static Rat parse(std::string_view text);

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }
  const mpq_class& gmp() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  /// Lowest-terms "p/q"; the denominator is always written.
  std::string str() const { return num().get_str() + "/" + den().get_str(); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.sign() == 0) throw Error("division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class v_;
};

/// "3" for integers, "p/q" otherwise; for messages, not serialization.
inline std::string compact(const Rat& x) { return x.is_integer() ? x.num().get_str() : x.str(); }

inline Rat abs(const Rat& x) { return x.sign() < 0 ? -x : x; }

inline Rat floor(const Rat& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
  return Rat(q);
}

inline Rat ceil(const Rat& x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
  return Rat(q);
}

inline Rat rat_pow(const Rat& x, long k) {
  if (k < 0 && x.sign() == 0) throw Error("zero raised to a negative power");
  const unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), x.num().get_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), x.den().get_mpz_t(), e);
  return k < 0 ? Rat(d, n) : Rat(n, d);
}

/// m * 2^e for arbitrary integer exponent.
inline Rat dyadic(const mpz_class& m, long e) {
  mpz_class p;
  if (e >= 0) {
    mpz_mul_2exp(p.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return Rat(p);
  }
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
  return Rat(m, p);
}

inline Rat Rat::parse(std::string_view text) {
  auto fail = [&] { return Error("malformed rational \"" + std::string(text) + "\""); };
  if (text.empty()) throw fail();
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class n, d;
    if (n.set_str(std::string(text.substr(0, slash)), 10) != 0 ||
        d.set_str(std::string(text.substr(slash + 1)), 10) != 0)
      throw fail();
    if (d == 0) throw Error("zero denominator in \"" + std::string(text) + "\"");
    return Rat(n, d);
  }
  std::string_view body = text;
  long exponent = 0;
  if (const auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    try {
      std::size_t used = 0;
      const std::string tail(body.substr(e + 1));
      exponent = std::stol(tail, &used);
      if (used != tail.size()) throw fail();
    } catch (const std::logic_error&) {
      throw fail();
    }
    body = body.substr(0, e);
  }
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }
  std::string digits;
  long frac = 0;
  bool seen_dot = false;
  for (char ch : body) {
    if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      if (seen_dot) ++frac;
    } else {
      throw fail();
    }
  }
  if (digits.empty()) throw fail();
  Rat value(mpz_class(digits, 10));
  value *= rat_pow(Rat(10), exponent - frac);
  return negative ? -value : value;
}

/// Closed rational interval [lo, hi].
struct RatInterval {
  Rat lo;
  Rat hi;

  RatInterval() = default;
  RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (hi < lo) throw Error("interval with lo > hi");
  }
  static RatInterval point(const Rat& x) { return {x, x}; }

  Rat width() const { return hi - lo; }
  Rat midpoint() const { return (lo + hi) / Rat(2); }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }

  friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
  }
  friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
  }
  friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Rat lo = c[0], hi = c[0];
    for (const auto& v : c) {
      if (v < lo) lo = v;
      if (hi < v) hi = v;
    }
    return {lo, hi};
  }
  friend bool operator==(const RatInterval&, const RatInterval&) = default;
};

/// total! / prod(parts_i!), computed as a chain of binomials.
inline Rat multinomial(unsigned long total, std::span<const unsigned long> parts) {
  const unsigned long sum = std::accumulate(parts.begin(), parts.end(), 0UL);
  if (sum != total) throw Error("parts do not partition total");
  mpz_class acc = 1, b;
  unsigned long running = 0;
  for (unsigned long k : parts) {
    running += k;
    mpz_bin_uiui(b.get_mpz_t(), running, k);
    acc *= b;
  }
  return Rat(acc);
}

inline Rat multinomial(unsigned long total, std::initializer_list<unsigned long> parts) {
  return multinomial(total, std::span<const unsigned long>(parts.begin(), parts.size()));
}

namespace detail {

// Taylor enclosure of e^x for x >= 0. The tail after the degree-N partial
// sum is bounded by term_{N+1} / (1 - x/(N+2)) once N + 2 > x.
inline RatInterval exp_taylor_nonneg(const Rat& x, const Rat& width) {
  if (x.sign() == 0) return RatInterval::point(Rat(1));
  Rat sum(1);
  Rat term(1);
  for (long n = 0;; ++n) {
    const Rat next = term * x / Rat(n + 1);
    if (Rat(n + 2) > x) {
      const Rat ratio = x / Rat(n + 2);
      const Rat tail = next / (Rat(1) - ratio);
      if (tail <= width) return {sum, sum + tail};
    }
    sum += next;
    term = next;
  }
}

inline RatInterval exp_uncached(const Rat& x, const Rat& width) {
  if (x.sign() >= 0) return exp_taylor_nonneg(x, width);
  const RatInterval pos = exp_taylor_nonneg(-x, width);
  return {Rat(1) / pos.hi, Rat(1) / pos.lo};
}

}  // namespace detail

/// Rational enclosure [lo, hi] of e^x with hi - lo <= width_bound.
/// Results are memoized per (x, width_bound); the cache is shared and locked.
inline RatInterval exp_enclosure(const Rat& x, const Rat& width_bound) {
  if (width_bound.sign() <= 0) throw Error("width bound must be positive");
  static std::mutex mu;
  static std::map<std::pair<std::string, std::string>, RatInterval> cache;
  const auto key = std::make_pair(x.str(), width_bound.str());
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  // For x < 0 the reciprocal of the enclosure at -x is used:
  // 1/lo - 1/hi = (hi - lo)/(lo*hi) <= hi - lo since lo >= 1.
  const RatInterval out = detail::exp_uncached(x, width_bound);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, out);
  return out;
}

/// Enclosure of log(x), x > 0, of width <= `width` (<= 1), found by
/// bisecting on y against enclosures of e^y.
inline RatInterval log_enclosure(const Rat& x, const Rat& width) {
  if (x.sign() <= 0) throw Error("log of a nonpositive number");
  if (width.sign() <= 0) throw Error("width bound must be positive");
  if (x == Rat(1)) return RatInterval::point(Rat(0));
  const Rat w = width < Rat(1) ? width : Rat(1);
  // |e^m - x| <= ew and min(e^m, x) >= x/2 give |m - log x| <= 2 ew / x.
  const Rat ew = w * x / Rat(4);
  long lo = 0, hi = 0;
  const Rat coarse(1, 2);
  if (x > Rat(1)) {
    while (detail::exp_uncached(Rat(hi), coarse).lo < x) ++hi;
    lo = hi - 1;
    while (detail::exp_uncached(Rat(lo), coarse).hi > x) --lo;
  } else {
    while (detail::exp_uncached(Rat(lo), coarse).hi > x) --lo;
    hi = lo + 1;
    while (detail::exp_uncached(Rat(hi), coarse).lo < x) ++hi;
  }
  // e^a <= x <= e^b throughout.
  Rat a(lo), b(hi);
  while (b - a > w) {
    const Rat m = (a + b) / Rat(2);
    const RatInterval e = detail::exp_uncached(m, ew);
    if (e.hi <= x) {
      a = m;
    } else if (e.lo >= x) {
      b = m;
    } else {
      const Rat delta = Rat(2) * ew / x;
      return {m - delta < a ? a : m - delta, b < m + delta ? b : m + delta};
    }
  }
  return {a, b};
}

enum class Rounding { down, up, nearest };

/// Decimal string with exactly `digits` fractional digits, rounded in the
/// given direction. Ties under `nearest` go away from zero.
inline std::string to_decimal(const Rat& x, int digits, Rounding dir) {
  if (digits < 1) throw Error("digits must be at least 1");
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const Rat scaled = x * Rat(scale);
  mpz_class m;
  switch (dir) {
    case Rounding::down:
      m = floor(scaled).num();
      break;
    case Rounding::up:
      m = ceil(scaled).num();
      break;
    case Rounding::nearest: {
      const Rat half(1, 2);
      m = scaled.sign() >= 0 ? floor(scaled + half).num() : ceil(scaled - half).num();
      break;
    }
  }
  const bool negative = m < 0;
  std::string s = mpz_class(abs(m)).get_str();
  if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return negative ? "-" + s : s;
}

/// Scientific rendering "m.mmm...e<exp>" with `significant` digits,
/// rounded in the given direction.
inline std::string to_scientific(const Rat& x, int significant, Rounding dir) {
  if (significant < 1) throw Error("significant digits must be at least 1");
  if (x.sign() == 0) return to_decimal(Rat(0), significant > 1 ? significant - 1 : 1, dir) + "e0";
  const Rat mag = abs(x);
  long e = static_cast<long>(mag.num().get_str().size()) - static_cast<long>(mag.den().get_str().size());
  while (mag / rat_pow(Rat(10), e) >= Rat(10)) ++e;
  while (mag / rat_pow(Rat(10), e) < Rat(1)) --e;
  const int frac = significant > 1 ? significant - 1 : 1;
  for (;;) {
    std::string m = to_decimal(x / rat_pow(Rat(10), e), frac, dir);
    const std::size_t lead = m[0] == '-' ? 1 : 0;
    if (m.compare(lead, 3, "10.") == 0) {
      ++e;
      continue;
    }
    return m + "e" + std::to_string(e);
  }
}

/// Sign of x^p - y, without taking any root.
inline std::strong_ordering cmp_scaled_power(const Rat& x, unsigned long p, const Rat& y) {
  return rat_pow(x, static_cast<long>(p)) <=> y;
}

}  // namespace hypercert
