#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cosep {

struct arithmetic_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::int64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

/// Ground field of all computations: the rationals or a prime field F_p.
struct Field {
  enum class Kind { rationals, prime };
  Kind kind = Kind::rationals;
  std::int64_t p = 0;

  static Field rationals() { return Field{Kind::rationals, 0}; }

  static Field prime(std::int64_t p) {
    if (p >= (std::int64_t{1} << 31) || !is_prime(p))
      throw input_error("field modulus must be a prime < 2^31, got " +
                        std::to_string(p));
    return Field{Kind::prime, p};
  }

  bool operator==(const Field&) const = default;

  std::string name() const {
    return kind == Kind::rationals ? "Q" : "Fp:" + std::to_string(p);
  }

  /// Parses "Q" or "Fp:<p>".
  static Field parse(const std::string& s) {
    if (s == "Q") return rationals();
    if (s.rfind("Fp:", 0) == 0) {
      std::int64_t p = 0;
      try {
        std::size_t used = 0;
        p = std::stoll(s.substr(3), &used);
        if (used != s.size() - 3) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw input_error("cannot parse field modulus in '" + s + "'");
      }
      return prime(p);
    }
    throw input_error("unknown field '" + s + "' (expected \"Q\" or \"Fp:<p>\")");
  }
};

namespace detail {

inline std::int64_t narrow128(__int128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw arithmetic_error(what);
  return static_cast<std::int64_t>(v);
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Modular inverse by extended Euclid; m prime, 0 < a < m.
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = a, r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  std::int64_t inv = old_s % m;
  if (inv < 0) inv += m;
  return inv;
}

}  // namespace detail

/// Exact field element. Over Q a reduced fraction with positive
/// denominator; over F_p a residue in [0, p) with denominator 1.
/// Every operation is exact; overflow of the 64-bit representation
/// raises arithmetic_error instead of wrapping.
class Scalar {
 public:
  Scalar() : field_(Field::rationals()), num_(0), den_(1) {}

  static Scalar zero(const Field& f) { return from_int(f, 0); }
  static Scalar one(const Field& f) { return from_int(f, 1); }

  static Scalar from_int(const Field& f, std::int64_t v) {
    Scalar s;
    s.field_ = f;
    if (f.kind == Field::Kind::prime) {
      s.num_ = v % f.p;
      if (s.num_ < 0) s.num_ += f.p;
    } else {
      s.num_ = v;
    }
    return s;
  }

  static Scalar fraction(const Field& f, std::int64_t num, std::int64_t den) {
    if (den == 0) throw input_error("zero denominator");
    if (f.kind == Field::Kind::prime) {
      Scalar d = from_int(f, den);
      if (d.num_ == 0)
        throw input_error("denominator not invertible mod " + std::to_string(f.p));
      return from_int(f, num) / d;
    }
    Scalar s;
    s.field_ = f;
    s.num_ = num;
    s.den_ = den;
    s.reduce();
    return s;
  }

  const Field& field() const { return field_; }
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar operator-() const {
    Scalar r = *this;
    if (field_.kind == Field::Kind::prime) {
      if (r.num_ != 0) r.num_ = field_.p - r.num_;
    } else {
      r.num_ = -r.num_;
    }
    return r;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    Scalar r;
    r.field_ = a.field_;
    if (a.field_.kind == Field::Kind::prime) {
      r.num_ = (a.num_ + b.num_) % a.field_.p;
      return r;
    }
    // Knuth's gcd trick keeps intermediates small.
    std::int64_t g = detail::gcd64(a.den_, b.den_);
    __int128 t = (__int128)a.num_ * (b.den_ / g) + (__int128)b.num_ * (a.den_ / g);
    __int128 d = (__int128)(a.den_ / g) * b.den_;
    r.assign128(t, d);
    return r;
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    Scalar r;
    r.field_ = a.field_;
    if (a.field_.kind == Field::Kind::prime) {
      r.num_ = static_cast<std::int64_t>(((__int128)a.num_ * b.num_) % a.field_.p);
      return r;
    }
    std::int64_t g1 = detail::gcd64(a.num_, b.den_);
    std::int64_t g2 = detail::gcd64(b.num_, a.den_);
    __int128 n = (__int128)(g1 ? a.num_ / g1 : a.num_) * (g2 ? b.num_ / g2 : b.num_);
    __int128 d = (__int128)(g2 ? a.den_ / g2 : a.den_) * (g1 ? b.den_ / g1 : b.den_);
    r.assign128(n, d);
    return r;
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    return a * b.inverse();
  }

  Scalar inverse() const {
    if (is_zero()) throw arithmetic_error("division by zero");
    Scalar r;
    r.field_ = field_;
    if (field_.kind == Field::Kind::prime) {
      r.num_ = detail::mod_inverse(num_, field_.p);
      return r;
    }
    r.num_ = den_;
    r.den_ = num_;
    if (r.den_ < 0) {
      r.num_ = -r.num_;
      r.den_ = -r.den_;
    }
    return r;
  }

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "-3" or "a/b" into an element of f. Rejects malformed text
  /// and denominators that vanish (in F_p: vanish mod p).
  static Scalar parse(const Field& f, const std::string& text) {
    std::size_t slash = text.find('/');
    auto parse_int = [&](const std::string& part) {
      if (part.empty()) throw input_error("empty number in '" + text + "'");
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(part, &used);
      } catch (const std::exception&) {
        throw input_error("cannot parse coefficient '" + text + "'");
      }
      if (used != part.size())
        throw input_error("cannot parse coefficient '" + text + "'");
      return v;
    };
    if (slash == std::string::npos) return from_int(f, parse_int(text));
    std::int64_t num = parse_int(text.substr(0, slash));
    std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0) throw input_error("zero denominator in '" + text + "'");
    return fraction(f, num, den);
  }

 private:
  void check_same(const Scalar& b) const {
    if (!(field_ == b.field_))
      throw std::logic_error("scalar field mismatch: " + field_.name() + " vs " +
                             b.field_.name());
  }

  void reduce() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    std::int64_t g = detail::gcd64(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  void assign128(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      return;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    num_ = detail::narrow128(n / a, "rational overflow");
    den_ = detail::narrow128(d / a, "rational overflow");
  }

  Field field_;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace cosep
