#include "jpmono/biguint.hpp"

#include <algorithm>

namespace jpmono {

using u128 = unsigned __int128;

BigUint::BigUint(uint64_t v) {
  if (v) limbs_.push_back(v);
}

void BigUint::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint &BigUint::mul_u64(uint64_t m) {
  if (m == 0) { limbs_.clear(); return *this; }
  uint64_t carry = 0;
  for (auto &l : limbs_) {
    u128 t = (u128)l * m + carry;
    l = (uint64_t)t;
    carry = (uint64_t)(t >> 64);
  }
  if (carry) limbs_.push_back(carry);
  return *this;
}

BigUint &BigUint::add_u64(uint64_t a) {
  size_t i = 0;
  while (a && i < limbs_.size()) {
    u128 t = (u128)limbs_[i] + a;
    limbs_[i] = (uint64_t)t;
    a = (uint64_t)(t >> 64);
    ++i;
  }
  if (a) limbs_.push_back(a);
  return *this;
}

uint64_t BigUint::divmod_u64(uint64_t d) {
  u128 rem = 0;
  for (size_t i = limbs_.size(); i-- > 0;) {
    u128 cur = (rem << 64) | limbs_[i];
    limbs_[i] = (uint64_t)(cur / d);
    rem = cur % d;
  }
  trim();
  return (uint64_t)rem;
}

BigUint operator*(const BigUint &a, const BigUint &b) {
  BigUint r;
  if (a.is_zero() || b.is_zero()) return r;
  r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
  for (size_t i = 0; i < a.limbs_.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < b.limbs_.size(); ++j) {
      u128 t = (u128)a.limbs_[i] * b.limbs_[j] + r.limbs_[i + j] + carry;
      r.limbs_[i + j] = (uint64_t)t;
      carry = (uint64_t)(t >> 64);
    }
    r.limbs_[i + b.limbs_.size()] += carry;
  }
  r.trim();
  return r;
}

bool operator<(const BigUint &a, const BigUint &b) {
  if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size();
  for (size_t i = a.limbs_.size(); i-- > 0;)
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i];
  return false;
}

std::string BigUint::str() const {
  if (is_zero()) return "0";
  BigUint t = *this;
  std::string out;
  while (!t.is_zero()) {
    uint64_t r = t.divmod_u64(1000000000000000000ULL);
    std::string chunk = std::to_string(r);
    if (!t.is_zero()) chunk = std::string(18 - chunk.size(), '0') + chunk;
    out = chunk + out;
  }
  return out;
}

} // namespace jpmono
