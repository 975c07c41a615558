#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rlnc {

/// Raw field element. For q = p^m with m > 1 the value packs the base-p
/// digits of the polynomial representative, digit k being the coefficient of x^k.
using Element = std::uint32_t;

/// Largest supported field order.
inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

class FieldError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Finite field F_q, q = p^m <= 2^16.
///
/// Prime fields use modular arithmetic. Extension fields are built over the
/// lexicographically least monic irreducible polynomial of degree m over F_p
/// (least packed integer value of the low-order coefficients) and multiply
/// through exp/log tables of a primitive element. Copies share the tables.
class Field {
public:
    /// Throws FieldError when q is not a prime power or exceeds 2^16.
    explicit Field(std::uint32_t q);

    std::uint32_t order() const noexcept { return tables_->q; }
    std::uint32_t characteristic() const noexcept { return tables_->p; }
    std::uint32_t degree() const noexcept { return tables_->m; }
    bool is_prime() const noexcept { return tables_->m == 1; }

    /// Coefficients of the reduction polynomial, low to high, size m + 1.
    /// For prime fields this is x (i.e. {0, 1}) and unused.
    std::span<const std::uint32_t> reduction_polynomial() const noexcept { return tables_->poly; }

    /// Discrete-log tables, empty for prime fields. exp_table has 2(q - 1)
    /// entries so that exp[log a + log b] needs no reduction.
    std::span<const Element> exp_table() const noexcept { return tables_->exp; }
    std::span<const std::uint32_t> log_table() const noexcept { return tables_->log; }

    bool contains(Element a) const noexcept { return a < tables_->q; }

    Element add(Element a, Element b) const noexcept
    {
        const auto& t = *tables_;
        if (t.p == 2) return a ^ b;
        if (t.m == 1) return static_cast<Element>((a + b) % t.p);
        return digitwise(a, b, false);
    }

    Element sub(Element a, Element b) const noexcept
    {
        const auto& t = *tables_;
        if (t.p == 2) return a ^ b;
        if (t.m == 1) return static_cast<Element>((a + t.p - b) % t.p);
        return digitwise(a, b, true);
    }

    Element neg(Element a) const noexcept { return sub(0, a); }

    Element mul(Element a, Element b) const noexcept
    {
        const auto& t = *tables_;
        if (a == 0 || b == 0) return 0;
        if (t.m == 1) {
            return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % t.p);
        }
        return t.exp[t.log[a] + t.log[b]];
    }

    /// Multiplicative inverse; throws std::domain_error for a == 0.
    Element inv(Element a) const;

    Element pow(Element a, std::uint64_t e) const noexcept;

    /// Human-readable polynomial, e.g. "x^2 + x + 1".
    std::string polynomial_string() const;

private:
    struct Tables {
        std::uint32_t q = 0;
        std::uint32_t p = 0;
        std::uint32_t m = 0;
        std::vector<std::uint32_t> poly;
        std::vector<Element> exp;
        std::vector<std::uint32_t> log;
        std::vector<std::uint32_t> place; // p^k for k < m
    };

    Element digitwise(Element a, Element b, bool subtract) const noexcept;

    std::shared_ptr<const Tables> tables_;
};

/// Checked constructor used by the front ends.
inline Field make_field(std::uint32_t q) { return Field(q); }

inline Element add(const Field& f, Element a, Element b) noexcept { return f.add(a, b); }
inline Element sub(const Field& f, Element a, Element b) noexcept { return f.sub(a, b); }
inline Element mul(const Field& f, Element a, Element b) noexcept { return f.mul(a, b); }
inline Element inv(const Field& f, Element a) { return f.inv(a); }

/// Returns {p, m} with q = p^m, or {0, 0} when q is not a prime power.
struct PrimePower {
    std::uint32_t p = 0;
    std::uint32_t m = 0;
};
PrimePower factor_prime_power(std::uint32_t q) noexcept;

bool is_prime_power(std::uint32_t q) noexcept;

} // namespace rlnc
