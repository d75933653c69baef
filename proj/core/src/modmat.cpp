#include "minvec/modmat.hpp"

#include <stdexcept>
#include <sstream>

namespace minvec {

std::int64_t ipow(std::int64_t base, int exp) {
  if (exp < 0) throw std::domain_error("ipow: negative exponent");
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > INT64_MAX / (base < 0 ? -base : base))
      throw std::overflow_error("ipow: overflow");
    r *= base;
  }
  return r;
}

bool is_prime(std::int64_t v) {
  if (v < 2) return false;
  for (std::int64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

int vp(std::int64_t value, std::int64_t p) {
  if (value == 0) throw std::domain_error("vp: zero has infinite valuation");
  int v = 0;
  while (value % p == 0) {
    value /= p;
    ++v;
  }
  return v;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t q) {
  return static_cast<std::int64_t>((static_cast<__int128>(mod(a, q)) * mod(b, q)) % q);
}

std::int64_t invmod(std::int64_t a, std::int64_t q) {
  if (q == 1) return 0;
  std::int64_t g = mod(a, q), h = q, x0 = 1, x1 = 0;
  while (h != 0) {
    const std::int64_t quo = g / h;
    std::int64_t t = g - quo * h;
    g = h;
    h = t;
    t = x0 - quo * x1;
    x0 = x1;
    x1 = t;
  }
  if (g != 1) throw std::domain_error("invmod: not a unit");
  return mod(x0, q);
}

ModMat::ModMat(int dim) : n(dim) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("ModMat: dimension out of range");
}

ModMat ModMat::identity(int dim) {
  ModMat m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

ModMat ModMat::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  ModMat m(static_cast<int>(rows.size()));
  for (int r = 0; r < m.n; ++r) {
    if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != m.n)
      throw std::invalid_argument("ModMat::from_rows: ragged rows");
    for (int c = 0; c < m.n; ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  return m;
}

ModMat reduce(const ModMat& x, std::int64_t q) {
  ModMat r = x;
  for (int i = 0; i < x.n * x.n; ++i) r.a[static_cast<std::size_t>(i)] = mod(x.a[static_cast<std::size_t>(i)], q);
  return r;
}

ModMat add(const ModMat& x, const ModMat& y, std::int64_t q) {
  ModMat r(x.n);
  for (int i = 0; i < x.n * x.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    r.a[k] = mod(x.a[k] + y.a[k], q);
  }
  return r;
}

ModMat sub(const ModMat& x, const ModMat& y, std::int64_t q) {
  ModMat r(x.n);
  for (int i = 0; i < x.n * x.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    r.a[k] = mod(x.a[k] - y.a[k], q);
  }
  return r;
}

ModMat mul(const ModMat& x, const ModMat& y, std::int64_t q) {
  const int n = x.n;
  ModMat r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      __int128 acc = 0;
      for (int k = 0; k < n; ++k) acc += static_cast<__int128>(x(i, k)) * y(k, j);
      r(i, j) = mod(static_cast<std::int64_t>(acc % q), q);
    }
  return r;
}

ModMat scale(const ModMat& x, std::int64_t s, std::int64_t q) {
  ModMat r(x.n);
  for (int i = 0; i < x.n * x.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    r.a[k] = mulmod(x.a[k], s, q);
  }
  return r;
}

ModMat mul_exact(const ModMat& x, const ModMat& y) {
  const int n = x.n;
  ModMat r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::int64_t acc = 0;
      for (int k = 0; k < n; ++k) acc += x(i, k) * y(k, j);
      r(i, j) = acc;
    }
  return r;
}

std::int64_t trace(const ModMat& x, std::int64_t q) {
  std::int64_t t = 0;
  for (int i = 0; i < x.n; ++i) t = mod(t + x(i, i), q);
  return t;
}

std::vector<std::int64_t> charpoly(const ModMat& x, std::int64_t q) {
  std::vector<std::int64_t> poly{1 % q};
  for (int k = 1; k <= x.n; ++k) {
    const int t = k - 1;
    std::vector<std::int64_t> toeplitz(static_cast<std::size_t>(k + 1), 0);
    toeplitz[0] = 1 % q;
    toeplitz[1] = mod(-x(t, t), q);
    std::vector<std::int64_t> v(static_cast<std::size_t>(t));
    for (int r = 0; r < t; ++r) v[static_cast<std::size_t>(r)] = mod(x(r, t), q);
    for (int i = 1; i <= k - 1; ++i) {
      std::int64_t dot = 0;
      for (int c = 0; c < t; ++c) dot = mod(dot + mulmod(x(t, c), v[static_cast<std::size_t>(c)], q), q);
      toeplitz[static_cast<std::size_t>(i + 1)] = mod(-dot, q);
      std::vector<std::int64_t> nv(static_cast<std::size_t>(t), 0);
      for (int r = 0; r < t; ++r)
        for (int c = 0; c < t; ++c)
          nv[static_cast<std::size_t>(r)] =
              mod(nv[static_cast<std::size_t>(r)] + mulmod(x(r, c), v[static_cast<std::size_t>(c)], q), q);
      v = std::move(nv);
    }
    std::vector<std::int64_t> next(static_cast<std::size_t>(k + 1), 0);
    for (int r = 0; r <= k; ++r)
      for (int s = 0; s <= std::min(r, k - 1); ++s)
        next[static_cast<std::size_t>(r)] =
            mod(next[static_cast<std::size_t>(r)] +
                    mulmod(toeplitz[static_cast<std::size_t>(r - s)], poly[static_cast<std::size_t>(s)], q),
                q);
    poly = std::move(next);
  }
  return poly;
}

std::int64_t det(const ModMat& x, std::int64_t q) {
  const auto cp = charpoly(x, q);
  const std::int64_t cn = cp.back();
  return (x.n % 2 == 0) ? cn : mod(-cn, q);
}

ModMat adjugate(const ModMat& x, std::int64_t q) {
  const int n = x.n;
  const auto cp = charpoly(x, q);
  // adj(X) = (-1)^(n-1) (X^(n-1) + c1 X^(n-2) + ... + c_(n-1) I), Horner form.
  ModMat acc = ModMat::identity(n);
  for (int k = 1; k <= n - 1; ++k) {
    acc = mul(acc, x, q);
    for (int i = 0; i < n; ++i) acc(i, i) = mod(acc(i, i) + cp[static_cast<std::size_t>(k)], q);
  }
  if ((n - 1) % 2 == 1) acc = scale(acc, q - 1, q);
  return reduce(acc, q);
}

std::optional<ModMat> inverse(const ModMat& x, std::int64_t q) {
  const std::int64_t d = det(x, q);
  std::int64_t dinv = 0;
  try {
    dinv = invmod(d, q);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
  return scale(adjugate(x, q), dinv, q);
}

bool all_divisible(const ModMat& x, std::int64_t d) {
  for (int i = 0; i < x.n * x.n; ++i)
    if (x.a[static_cast<std::size_t>(i)] % d != 0) return false;
  return true;
}

std::string to_string(const ModMat& x) {
  std::ostringstream os;
  os << '[';
  for (int r = 0; r < x.n; ++r) {
    if (r) os << "; ";
    for (int c = 0; c < x.n; ++c) os << (c ? " " : "") << x(r, c);
  }
  os << ']';
  return os.str();
}

MatCodec::MatCodec(int n, std::int64_t q) : n_(n), q_(q) {
  long double capacity = 1;
  for (int i = 0; i < n * n; ++i) capacity *= static_cast<long double>(q);
  if (capacity > 1.8e19L) throw std::overflow_error("MatCodec: q^(n^2) does not fit in 64 bits");
}

std::uint64_t MatCodec::encode(const ModMat& x) const {
  std::uint64_t key = 0;
  for (int i = n_ * n_ - 1; i >= 0; --i)
    key = key * static_cast<std::uint64_t>(q_) + static_cast<std::uint64_t>(mod(x.a[static_cast<std::size_t>(i)], q_));
  return key;
}

ModMat MatCodec::decode(std::uint64_t key) const {
  ModMat m(n_);
  for (int i = 0; i < n_ * n_; ++i) {
    m.a[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(key % static_cast<std::uint64_t>(q_));
    key /= static_cast<std::uint64_t>(q_);
  }
  return m;
}

}  // namespace minvec
