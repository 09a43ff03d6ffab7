#include "spf/field.hpp"

#include <string>

namespace spf {

bool is_prime(uint32_t n)
{
    if (n < 2)
        return false;
    for (uint32_t q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

Fp::Fp(uint32_t p) : p_(p)
{
    if (p >= (1u << 16) || !is_prime(p))
        throw std::invalid_argument("modulus " + std::to_string(p) + " is not a prime below 2^16");
    inv_.assign(p, 0);
    inv_[1] = 1;
    for (uint32_t a = 2; a < p; ++a)
        inv_[a] = p - static_cast<uint32_t>((uint64_t(p / a) * inv_[p % a]) % p);
    uint32_t rows = p < 64 ? p : 64;
    pascal_.assign(rows, {});
    for (uint32_t n = 0; n < rows; ++n) {
        pascal_[n].assign(n + 1, 1);
        for (uint32_t k = 1; k < n; ++k)
            pascal_[n][k] = add(pascal_[n - 1][k - 1], pascal_[n - 1][k]);
    }
}

uint32_t Fp::inv(uint32_t a) const
{
    if (a == 0)
        throw std::domain_error("inverse of zero");
    return inv_[a];
}

uint32_t Fp::reduce(int64_t a) const
{
    int64_t r = a % int64_t(p_);
    return static_cast<uint32_t>(r < 0 ? r + p_ : r);
}

static uint32_t small_binom(const Fp& f, uint32_t n, uint32_t k)
{
    if (k > n)
        return 0;
    uint32_t num = 1, den = 1;
    for (uint32_t i = 0; i < k; ++i) {
        num = f.mul(num, n - i);
        den = f.mul(den, i + 1);
    }
    return f.mul(num, f.inv(den));
}

uint32_t Fp::binom(uint64_t n, uint64_t k) const
{
    if (k > n)
        return 0;
    uint32_t r = 1;
    while (n || k) {
        uint32_t ni = n % p_, ki = k % p_;
        if (ki > ni)
            return 0;
        r = mul(r, ni < pascal_.size() ? pascal_[ni][ki] : small_binom(*this, ni, ki));
        n /= p_;
        k /= p_;
    }
    return r;
}

uint32_t Fp::multinomial(const std::vector<uint32_t>& parts) const
{
    uint64_t total = 0;
    uint32_t r = 1;
    for (uint32_t a : parts) {
        total += a;
        r = mul(r, binom(total, a));
        if (r == 0)
            return 0;
    }
    return r;
}

} // namespace spf
