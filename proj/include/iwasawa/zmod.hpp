#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace iwasawa {

// Error taxonomy shared by every layer.  The C API maps these onto status codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonUnit : Error {
    using Error::Error;
};
struct InexactDivision : Error {
    using Error::Error;
};
struct IntegralityFailure : Error {
    using Error::Error;
};
struct NonIntegral : Error {
    using Error::Error;
};
struct BoundExceeded : Error {
    using Error::Error;
};
struct InvalidArgument : Error {
    using Error::Error;
};
struct ParseError : Error {
    ParseError(const std::string& what, int line, int column)
        : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line(line), column(column) {}
    int line;
    int column;
};

using u64 = std::uint64_t;
using i64 = std::int64_t;

bool is_prime(u64 n);
u64 ipow(u64 base, unsigned exp);
// v_p(n) for n != 0; returns a large sentinel for n == 0.
int valuation(i64 n, u64 p);

// The residue ring Z/p^m.  Values are canonical representatives in [0, p^m).
class Zmod {
public:
    Zmod() = default;
    Zmod(u64 p, int m);

    u64 p() const { return p_; }
    int m() const { return m_; }
    u64 modulus() const { return q_; }

    u64 reduce(i64 x) const {
        i64 r = x % static_cast<i64>(q_);
        return static_cast<u64>(r < 0 ? r + static_cast<i64>(q_) : r);
    }
    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + q_ - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : q_ - a; }
    u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % q_); }
    u64 pow(u64 a, u64 e) const;
    bool is_unit(u64 a) const { return a % p_ != 0; }
    u64 inv(u64 a) const;  // throws NonUnit
    // v_p of a residue, capped at m (m means zero).
    int val(u64 a) const;
    // Largest number of products a*b that can be accumulated in a u64 before reduction.
    u64 accumulation_budget() const { return budget_; }

    bool operator==(const Zmod& o) const { return p_ == o.p_ && m_ == o.m_; }
    bool operator!=(const Zmod& o) const { return !(*this == o); }

private:
    u64 p_ = 3;
    int m_ = 1;
    u64 q_ = 3;
    u64 budget_ = 1;
};

// Teichmueller representative of a unit: the stable value of c^{p^k}.
u64 teichmuller(const Zmod& R, u64 c);

}  // namespace iwasawa
