#pragma once
// Finite fields F_{p^d} with canonical element encodings.
//
// An element of F_{p^d} = F_p[t]/(f) is encoded as a uint32_t whose base-p
// digits (little-endian) are the coefficients of its representative of degree
// < d.  The modulus f is the monic irreducible polynomial of degree d whose
// non-leading coefficient vector has the numerically least encoding; this
// makes every encoding reproducible across runs and platforms.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hk {

class GF {
public:
  GF(int p, int deg);

  int p() const { return p_; }
  int deg() const { return deg_; }
  uint32_t size() const { return size_; }

  uint32_t zero() const { return 0; }
  uint32_t one() const { return 1; }
  uint32_t from_int(long long c) const;  // image of an integer constant

  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t sub(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;
  uint32_t pow(uint32_t a, uint64_t e) const;
  uint32_t frob_p(uint32_t a) const { return pow(a, (uint64_t)p_); }  // a^p

  // Non-leading coefficients (c_0..c_{d-1}) of the modulus f = t^d + sum c_i t^i.
  const std::vector<int>& modulus() const { return mod_; }

  // Lexicographically least root in *this of the modulus of `sub`
  // (sub.deg() must divide deg()).  Defines the canonical embedding
  // F_{p^{sub.deg}} -> F_{p^deg}: digits c_i |-> sum c_i root^i.
  uint32_t embed_root(const GF& sub) const;
  uint32_t embed(const GF& sub, uint32_t elem, uint32_t root) const;

private:
  int p_, deg_;
  uint32_t size_;
  std::vector<int> mod_;

  std::vector<int> decode(uint32_t a) const;
  uint32_t encode(const std::vector<int>& v) const;
};

}  // namespace hk
