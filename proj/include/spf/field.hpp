#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace spf {

bool is_prime(uint32_t n);

// Arithmetic in F_p, p < 2^16.
class Fp {
public:
    explicit Fp(uint32_t p);

    uint32_t p() const { return p_; }
    uint32_t add(uint32_t a, uint32_t b) const { uint32_t s = a + b; return s >= p_ ? s - p_ : s; }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    uint32_t mul(uint32_t a, uint32_t b) const { return (a * b) % p_; }
    uint32_t inv(uint32_t a) const;
    uint32_t reduce(int64_t a) const;

    // Binomial and multinomial coefficients mod p via Lucas.
    uint32_t binom(uint64_t n, uint64_t k) const;
    uint32_t multinomial(const std::vector<uint32_t>& parts) const;

private:
    uint32_t p_;
    std::vector<uint32_t> inv_;
    std::vector<std::vector<uint32_t>> pascal_;
};

} // namespace spf
