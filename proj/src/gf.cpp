#include "matring/gf.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "matring/error.hpp"

namespace matring {
namespace {

using Poly = std::vector<int>;  // little-endian coefficients mod p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b over F_p.
Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const int lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

// True when `f` (monic, degree k) has no monic factor of degree 1..k/2.
bool is_irreducible(const Poly& f, int p) {
  const int k = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= k / 2; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long c = 0; c < count; ++c) {
      Poly g(static_cast<std::size_t>(d) + 1, 0);
      long long rest = c;
      for (int i = 0; i < d; ++i) {
        g[static_cast<std::size_t>(i)] = static_cast<int>(rest % p);
        rest /= p;
      }
      g[static_cast<std::size_t>(d)] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::optional<Poly> default_polynomial(int q) {
  switch (q) {
    case 4: return Poly{1, 1, 1};
    case 8: return Poly{1, 1, 0, 1};
    case 9: return Poly{1, 0, 1};
    case 16: return Poly{1, 1, 0, 0, 1};
    case 25: return Poly{2, 0, 1};
    case 27: return Poly{1, 2, 0, 1};
    default: return std::nullopt;
  }
}

Poly digits_of(int code, int p, int k) {
  Poly d(static_cast<std::size_t>(k), 0);
  for (int i = 0; i < k; ++i) {
    d[static_cast<std::size_t>(i)] = code % p;
    code /= p;
  }
  return d;
}

int code_of(const Poly& d, int p) {
  int code = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) code = code * p + *it;
  return code;
}

int parse_int(std::string_view s) {
  int value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<int, int>> prime_power(long long q) {
  if (q < 2) return std::nullopt;
  long long p = 2;
  while (q % p != 0) ++p;
  int k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) return std::nullopt;
  return std::pair{static_cast<int>(p), k};
}

Field make_field(int p, int k, std::optional<std::vector<int>> irreducible) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrimeP, std::to_string(p) + " is not prime");
  if (k < 1) throw Error(ErrorCode::UnsupportedSize, "extension degree must be >= 1");
  long long q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > FieldSpec::kMaxOrder) {
      throw Error(ErrorCode::UnsupportedSize, "field order exceeds 256");
    }
  }

  Poly f;
  if (irreducible) {
    f = *irreducible;
  } else if (k == 1) {
    f = {0, 1};
  } else if (auto d = default_polynomial(static_cast<int>(q))) {
    f = *d;
  } else {
    throw Error(ErrorCode::UnsupportedSize,
                "no built-in polynomial for q = " + std::to_string(q) + "; supply one");
  }
  if (f.size() != static_cast<std::size_t>(k) + 1 || f.back() != 1 ||
      std::any_of(f.begin(), f.end(), [p](int c) { return c < 0 || c >= p; })) {
    throw Error(ErrorCode::ReduciblePolynomial, "polynomial must be monic of degree k over F_p");
  }
  if (!is_irreducible(f, p)) {
    throw Error(ErrorCode::ReduciblePolynomial, "polynomial has a factor over F_p");
  }

  std::shared_ptr<FieldSpec> spec(new FieldSpec());
  spec->p_ = p;
  spec->k_ = k;
  spec->q_ = static_cast<int>(q);
  spec->irreducible_ = f;

  const auto n = static_cast<std::size_t>(q);
  spec->add_.resize(n * n);
  spec->mul_.resize(n * n);
  spec->neg_.resize(n);
  spec->inv_.assign(n, 0);
  spec->trace_.resize(n);

  std::vector<Poly> digits(n);
  for (int c = 0; c < q; ++c) digits[static_cast<std::size_t>(c)] = digits_of(c, p, k);

  for (std::size_t a = 0; a < n; ++a) {
    Poly neg(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) neg[i] = (p - digits[a][i]) % p;
    spec->neg_[a] = static_cast<std::uint8_t>(code_of(neg, p));
    for (std::size_t b = 0; b < n; ++b) {
      Poly sum(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) sum[i] = (digits[a][i] + digits[b][i]) % p;
      spec->add_[a * n + b] = static_cast<std::uint8_t>(code_of(sum, p));

      Poly prod(static_cast<std::size_t>(2 * k - 1), 0);
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          prod[i + j] = (prod[i + j] + digits[a][i] * digits[b][j]) % p;
        }
      }
      Poly red = poly_mod(prod, f, p);
      red.resize(static_cast<std::size_t>(k), 0);
      spec->mul_[a * n + b] = static_cast<std::uint8_t>(code_of(red, p));
    }
  }
  for (std::size_t a = 1; a < n; ++a) {
    for (std::size_t b = 1; b < n; ++b) {
      if (spec->mul_[a * n + b] == 1) {
        spec->inv_[a] = static_cast<std::uint8_t>(b);
        break;
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    // tr(a) = a + a^p + ... + a^(p^(k-1))
    std::size_t power = a;
    std::size_t sum = 0;
    for (int i = 0; i < k; ++i) {
      sum = spec->add_[sum * n + power];
      std::size_t next = 1;
      for (int e = 0; e < p; ++e) next = spec->mul_[next * n + power];
      power = next;
    }
    spec->trace_[a] = static_cast<std::uint8_t>(sum);
  }
  spec->roots_.resize(static_cast<std::size_t>(p));
  for (int t = 0; t < p; ++t) {
    spec->roots_[static_cast<std::size_t>(t)] =
        std::polar(1.0, 2.0 * std::numbers::pi * t / static_cast<double>(p));
  }
  spec->roots_[0] = {1.0, 0.0};
  return spec;
}

Field make_field_for_order(int q) {
  auto pk = prime_power(q);
  if (!pk) throw Error(ErrorCode::UnsupportedSize, std::to_string(q) + " is not a prime power");
  return make_field(pk->first, pk->second);
}

Field parse_field_config(std::string_view text) {
  std::optional<int> p, k;
  std::optional<std::vector<int>> poly;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "expected key=value: " + token);
    const std::string_view key = std::string_view(token).substr(0, eq);
    const std::string_view value = std::string_view(token).substr(eq + 1);
    if (key == "p") {
      p = parse_int(value);
    } else if (key == "k") {
      k = parse_int(value);
    } else if (key == "poly") {
      std::vector<int> coeffs;
      std::size_t start = 0;
      while (start <= value.size()) {
        const auto comma = value.find(',', start);
        const auto part = value.substr(start, comma == std::string_view::npos ? value.npos
                                                                               : comma - start);
        coeffs.push_back(parse_int(part));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      poly = std::move(coeffs);
    } else {
      throw Error(ErrorCode::ParseError, "unknown key: " + std::string(key));
    }
  }
  if (!p) throw Error(ErrorCode::ParseError, "missing p");
  return make_field(*p, k.value_or(1), std::move(poly));
}

bool same_field(const FieldSpec& a, const FieldSpec& b) { return &a == &b || a == b; }

std::size_t FieldSpec::check(FieldElem a) const {
  if (a.code >= q_) {
    throw Error(ErrorCode::FieldMismatch,
                "code " + std::to_string(a.code) + " outside F_" + std::to_string(q_));
  }
  return a.code;
}

FieldElem FieldSpec::elem(int code) const {
  if (code < 0 || code >= q_) {
    throw Error(ErrorCode::FieldMismatch,
                "code " + std::to_string(code) + " outside F_" + std::to_string(q_));
  }
  return FieldElem{static_cast<std::uint16_t>(code)};
}

FieldElem FieldSpec::inv(FieldElem a) const {
  if (check(a) == 0) throw Error(ErrorCode::ZeroInverse, "zero has no inverse");
  return FieldElem{inv_[a.code]};
}

FieldElem FieldSpec::pow(FieldElem a, std::uint64_t e) const {
  FieldElem result = one();
  while (e) {
    if (e & 1U) result = mul(result, a);
    a = mul(a, a);
    e >>= 1U;
  }
  return result;
}

std::vector<FieldElem> FieldSpec::elements() const {
  std::vector<FieldElem> out;
  out.reserve(static_cast<std::size_t>(q_));
  for (int c = 0; c < q_; ++c) out.emplace_back(static_cast<std::uint16_t>(c));
  return out;
}

std::vector<FieldElem> FieldSpec::units() const {
  auto all = elements();
  all.erase(all.begin());
  return all;
}

std::string FieldSpec::config_string() const {
  std::string out = "p=" + std::to_string(p_) + " k=" + std::to_string(k_) + " poly=";
  for (std::size_t i = 0; i < irreducible_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(irreducible_[i]);
  }
  return out;
}

}  // namespace matring
