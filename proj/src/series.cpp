#include "belyi/series.hpp"

#include <algorithm>

namespace belyi {

namespace {

long sat_add(long a, long b) {
  long r = a + b;
  return std::min(r, Series::kExact);
}

}  // namespace

Series::Series(const FieldElem& zero, long start, std::vector<FieldElem> coeffs, long prec)
    : zero_(zero), start_(start), c_(std::move(coeffs)), prec_(std::min(prec, kExact)) {
  trim();
}

void Series::trim() {
  const long known = prec_ - start_;
  if (known < static_cast<long>(c_.size())) c_.resize(static_cast<size_t>(std::max(0L, known)), zero_);
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  // Drop leading zeros so start_ tracks the first stored coefficient.
  size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    start_ += static_cast<long>(lead);
  }
  if (c_.empty() && start_ > prec_) start_ = prec_;
}

FieldElem Series::coeff(long k) const {
  ensure(k < prec_, "series coefficient requested beyond its precision");
  if (k < start_ || k >= start_ + static_cast<long>(c_.size())) return zero_;
  return c_[static_cast<size_t>(k - start_)];
}

std::optional<long> Series::valuation() const {
  if (c_.empty()) return std::nullopt;
  return start_;
}

Series Series::truncate(long prec) const {
  Series r = *this;
  r.prec_ = std::min(prec_, prec);
  r.trim();
  return r;
}

Series Series::shift(long k) const {
  Series r = *this;
  r.start_ += k;
  if (!is_exact()) r.prec_ += k;
  return r;
}

Series Series::operator-() const {
  Series r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Series operator+(const Series& a, const Series& b) {
  const long prec = std::min(a.prec_, b.prec_);
  if (a.c_.empty()) return b.truncate(prec);
  if (b.c_.empty()) return a.truncate(prec);
  const long lo = std::min(a.start_, b.start_);
  const long hi = std::min(prec, std::max(a.start_ + static_cast<long>(a.c_.size()),
                                          b.start_ + static_cast<long>(b.c_.size())));
  std::vector<FieldElem> c;
  for (long k = lo; k < hi; ++k) {
    FieldElem v = a.zero_;
    if (k >= a.start_ && k < a.start_ + static_cast<long>(a.c_.size())) v += a.c_[static_cast<size_t>(k - a.start_)];
    if (k >= b.start_ && k < b.start_ + static_cast<long>(b.c_.size())) v += b.c_[static_cast<size_t>(k - b.start_)];
    c.push_back(v);
  }
  return Series(a.zero_, lo, std::move(c), prec);
}

Series operator*(const Series& a, const Series& b) {
  const long prec = std::min(sat_add(a.start_, b.prec_), sat_add(b.start_, a.prec_));
  if (a.c_.empty() || b.c_.empty()) return Series(a.zero_, std::min(prec, a.start_ + b.start_), {}, prec);
  const long lo = a.start_ + b.start_;
  const long hi = std::min(prec, lo + static_cast<long>(a.c_.size() + b.c_.size()) - 1);
  std::vector<FieldElem> c(static_cast<size_t>(std::max(0L, hi - lo)), a.zero_);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      const long k = static_cast<long>(i + j);
      if (lo + k >= hi) break;
      if (!b.c_[j].is_zero()) c[static_cast<size_t>(k)] += a.c_[i] * b.c_[j];
    }
  }
  return Series(a.zero_, lo, std::move(c), prec);
}

Series operator*(const Series& a, const FieldElem& s) {
  if (s.is_zero()) return Series(a.zero_, a.prec_, {}, a.prec_);
  Series r = a;
  for (auto& c : r.c_) c = c * s;
  return r;
}

Series Series::inverse() const {
  if (c_.empty()) throw MathError("series inverse needs a known nonzero leading term");
  const long v = start_;
  // Relative precision carries over; an exact series with several terms
  // yields an infinite expansion, so cap it at the stored length unless exact monomial.
  long rel = prec_ - v;
  if (is_exact()) {
    if (c_.size() == 1) return Series::exact(zero_, -v, {c_[0].inverse()});
    throw InternalError("inverse of an exact series needs an explicit precision; truncate first");
  }
  std::vector<FieldElem> w(static_cast<size_t>(rel), zero_);
  const FieldElem inv0 = c_[0].inverse();
  for (long n = 0; n < rel; ++n) {
    FieldElem acc = n == 0 ? zero_.one() : zero_;
    for (long k = 1; k <= n && k < static_cast<long>(c_.size()); ++k)
      if (!c_[static_cast<size_t>(k)].is_zero()) acc -= c_[static_cast<size_t>(k)] * w[static_cast<size_t>(n - k)];
    w[static_cast<size_t>(n)] = acc * inv0;
  }
  return Series(zero_, -v, std::move(w), -v + rel);
}

Series Series::unit_power(const QQ& beta) const {
  ensure(start_ == 0 && !c_.empty() && c_[0].is_one(), "unit_power needs constant term 1");
  ensure(!is_exact(), "unit_power needs a finite precision");
  const long rel = prec_;
  // w_n = (1/n) sum_{k=1}^n ((beta+1)k - n) A_k w_{n-k}
  std::vector<FieldElem> w(static_cast<size_t>(rel), zero_);
  w[0] = zero_.one();
  const FieldTower* K = zero_.tower();
  for (long n = 1; n < rel; ++n) {
    FieldElem acc = zero_;
    for (long k = 1; k <= n && k < static_cast<long>(c_.size()); ++k) {
      const FieldElem& Ak = c_[static_cast<size_t>(k)];
      if (Ak.is_zero()) continue;
      QQ f = (beta + QQ(1)) * QQ(k) - QQ(n);
      if (f.is_zero()) continue;
      acc += FieldElem(K, f) * Ak * w[static_cast<size_t>(n - k)];
    }
    w[static_cast<size_t>(n)] = acc * FieldElem(K, QQ(1, n));
  }
  return Series(zero_, 0, std::move(w), rel);
}

Series Series::compose_into(const Poly<FieldElem>& p) const {
  Series acc = Series::exact(zero_, 0, {});
  for (int i = p.degree(); i >= 0; --i) acc = acc * *this + Series::monomial(p.coeff(i), 0);
  if (p.is_zero()) return Series::exact(zero_, 0, {});
  return acc;
}

}  // namespace belyi
