#ifndef JPMONO_BIGUINT_HPP
#define JPMONO_BIGUINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace jpmono {

// Arbitrary-precision unsigned integer, 64-bit limbs, little-endian.
// Covers group orders and order products; division only by machine words.
class BigUint {
public:
  BigUint() = default;
  BigUint(uint64_t v);

  bool is_zero() const { return limbs_.empty(); }
  bool fits_u64() const { return limbs_.size() <= 1; }
  uint64_t as_u64() const { return limbs_.empty() ? 0 : limbs_[0]; }

  BigUint &mul_u64(uint64_t m);
  BigUint &add_u64(uint64_t a);
  // divides by d in place, returns the remainder
  uint64_t divmod_u64(uint64_t d);

  friend BigUint operator*(const BigUint &a, const BigUint &b);
  friend bool operator==(const BigUint &a, const BigUint &b) { return a.limbs_ == b.limbs_; }
  friend bool operator!=(const BigUint &a, const BigUint &b) { return !(a == b); }
  friend bool operator<(const BigUint &a, const BigUint &b);

  std::string str() const; // decimal

private:
  std::vector<uint64_t> limbs_;
  void trim();
};

} // namespace jpmono

#endif
