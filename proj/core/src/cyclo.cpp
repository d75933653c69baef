#include "minvec/cyclo.hpp"

#include <sstream>
#include <stdexcept>

#include "minvec/modmat.hpp"

namespace minvec {

Cyclo::Cyclo(std::int64_t p, int level) : p_(p), level_(level) {
  if (level < 1) throw std::invalid_argument("Cyclo: level must be >= 1");
  c_.assign(static_cast<std::size_t>(ipow(p, level)), 0);
}

void Cyclo::add_root(std::int64_t t, std::int64_t k) { c_[static_cast<std::size_t>(mod(t, order()))] += k; }

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  if (o.p_ != p_ || o.level_ != level_) throw std::invalid_argument("Cyclo: level mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
  if (o.p_ != p_ || o.level_ != level_) throw std::invalid_argument("Cyclo: level mismatch");
  Cyclo r(p_, level_);
  const std::int64_t M = order();
  for (std::int64_t i = 0; i < M; ++i) {
    const std::int64_t a = c_[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    for (std::int64_t k = 0; k < M; ++k) {
      const std::int64_t b = o.c_[static_cast<std::size_t>(k)];
      if (b != 0) r.c_[static_cast<std::size_t>((i + k) % M)] += a * b;
    }
  }
  return r;
}

Cyclo Cyclo::scaled(std::int64_t k) const {
  Cyclo r = *this;
  for (auto& x : r.c_) x *= k;
  return r;
}

Cyclo Cyclo::conj() const {
  Cyclo r(p_, level_);
  const std::int64_t M = order();
  for (std::int64_t i = 0; i < M; ++i) r.c_[static_cast<std::size_t>(mod(-i, M))] = c_[static_cast<std::size_t>(i)];
  return r;
}

Cyclo Cyclo::canonical() const {
  // Relations: sum_{s<p} zeta^(r + s M/p) = 0 for each r < M/p.
  Cyclo r = *this;
  const std::int64_t M = order();
  const std::int64_t step = M / p_;
  for (std::int64_t base = 0; base < step; ++base) {
    const std::int64_t top = r.c_[static_cast<std::size_t>(base + (p_ - 1) * step)];
    if (top == 0) continue;
    for (std::int64_t s = 0; s < p_; ++s) r.c_[static_cast<std::size_t>(base + s * step)] -= top;
  }
  return r;
}

std::optional<std::int64_t> Cyclo::as_integer() const {
  const Cyclo r = canonical();
  for (std::size_t i = 1; i < r.c_.size(); ++i)
    if (r.c_[i] != 0) return std::nullopt;
  return r.c_[0];
}

bool Cyclo::is_zero() const {
  const auto v = as_integer();
  return v && *v == 0;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.p_ != b.p_ || a.level_ != b.level_) return false;
  return a.canonical().c_ == b.canonical().c_;
}

std::string Cyclo::str() const {
  const Cyclo r = canonical();
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < r.c_.size(); ++i) {
    if (r.c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << r.c_[i];
    if (i) os << "*z^" << i;
  }
  if (first) os << "0";
  os << " (z = e(1/" << order() << "))";
  return os.str();
}

}  // namespace minvec
