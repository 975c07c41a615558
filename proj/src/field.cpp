#include "rlnc/field.hpp"

#include <algorithm>
#include <sstream>

namespace rlnc {

namespace {

using Poly = std::vector<std::uint32_t>; // coefficients over F_p, low to high

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inverse_mod_prime(std::uint32_t a, std::uint32_t p)
{
    // Fermat: a^(p-2)
    std::uint64_t result = 1;
    std::uint64_t base = a % p;
    std::uint32_t e = p - 2;
    while (e) {
        if (e & 1u) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo a monic divisor.
Poly poly_mod(Poly a, const Poly& divisor, std::uint32_t p)
{
    const std::size_t d = divisor.size() - 1;
    trim(a);
    while (a.size() > d) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - d;
        for (std::size_t k = 0; k <= d; ++k) {
            const std::uint64_t t = static_cast<std::uint64_t>(lead) * divisor[k] % p;
            a[shift + k] = static_cast<std::uint32_t>((a[shift + k] + p - t) % p);
        }
        trim(a);
    }
    return a;
}

Poly digits_of(std::uint32_t value, std::uint32_t p, std::uint32_t count)
{
    Poly d(count, 0);
    for (std::uint32_t k = 0; k < count; ++k) {
        d[k] = value % p;
        value /= p;
    }
    return d;
}

std::uint32_t pack(const Poly& d, std::uint32_t p)
{
    std::uint32_t v = 0;
    for (std::size_t k = d.size(); k-- > 0;) v = v * p + d[k];
    return v;
}

// Monic polynomial of the given degree whose low-order coefficients are the
// base-p digits of `low`.
Poly monic(std::uint32_t low, std::uint32_t p, std::uint32_t degree)
{
    Poly f = digits_of(low, p, degree);
    f.push_back(1);
    return f;
}

bool is_irreducible(const Poly& f, std::uint32_t p)
{
    const auto m = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t d = 1; d <= m / 2; ++d) {
        std::uint32_t count = 1;
        for (std::uint32_t k = 0; k < d; ++k) count *= p;
        for (std::uint32_t low = 0; low < count; ++low) {
            if (poly_mod(f, monic(low, p, d), p).empty()) return false;
        }
    }
    return true;
}

Element slow_mul(Element a, Element b, const Poly& f, std::uint32_t p)
{
    const auto m = static_cast<std::uint32_t>(f.size() - 1);
    const Poly da = digits_of(a, p, m);
    const Poly db = digits_of(b, p, m);
    Poly prod(2 * m, 0);
    for (std::uint32_t i = 0; i < m; ++i) {
        for (std::uint32_t j = 0; j < m; ++j) {
            prod[i + j] = static_cast<std::uint32_t>(
                (prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p);
        }
    }
    Poly r = poly_mod(std::move(prod), f, p);
    r.resize(m, 0);
    return pack(r, p);
}

} // namespace

PrimePower factor_prime_power(std::uint32_t q) noexcept
{
    if (q < 2) return {};
    std::uint32_t p = 0;
    for (std::uint32_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) return {q, 1};
    std::uint32_t m = 0;
    while (q % p == 0) {
        q /= p;
        ++m;
    }
    if (q != 1) return {};
    return {p, m};
}

bool is_prime_power(std::uint32_t q) noexcept { return factor_prime_power(q).p != 0; }

Field::Field(std::uint32_t q)
{
    if (q > kMaxFieldOrder) {
        throw FieldError("field order " + std::to_string(q) + " exceeds 65536");
    }
    const PrimePower pm = factor_prime_power(q);
    if (pm.p == 0) {
        throw FieldError("field order must be a prime power (got " + std::to_string(q) + ")");
    }

    auto t = std::make_shared<Tables>();
    t->q = q;
    t->p = pm.p;
    t->m = pm.m;
    std::uint32_t place = 1;
    for (std::uint32_t k = 0; k < pm.m; ++k) {
        t->place.push_back(place);
        place *= pm.p;
    }

    if (pm.m == 1) {
        t->poly = {0, 1};
        tables_ = std::move(t);
        return;
    }

    const std::uint32_t p = pm.p;
    const std::uint32_t m = pm.m;
    for (std::uint32_t low = 0; low < q; ++low) {
        Poly f = monic(low, p, m);
        if (is_irreducible(f, p)) {
            t->poly = std::move(f);
            break;
        }
    }

    // Smallest primitive element, found by walking its powers.
    const std::uint32_t group = q - 1;
    std::vector<Element> powers;
    powers.reserve(group);
    for (Element g = 2; g < q; ++g) {
        powers.clear();
        Element x = 1;
        do {
            powers.push_back(x);
            x = slow_mul(x, g, t->poly, p);
        } while (x != 1 && powers.size() <= group);
        if (powers.size() == group) break;
    }

    t->exp.resize(2 * static_cast<std::size_t>(group));
    t->log.assign(q, 0);
    for (std::uint32_t k = 0; k < group; ++k) {
        t->exp[k] = powers[k];
        t->exp[k + group] = powers[k];
        t->log[powers[k]] = k;
    }
    tables_ = std::move(t);
}

Element Field::digitwise(Element a, Element b, bool subtract) const noexcept
{
    const auto& t = *tables_;
    Element out = 0;
    for (std::uint32_t k = 0; k < t.m; ++k) {
        const std::uint32_t da = (a / t.place[k]) % t.p;
        const std::uint32_t db = (b / t.place[k]) % t.p;
        const std::uint32_t d = subtract ? (da + t.p - db) % t.p : (da + db) % t.p;
        out += d * t.place[k];
    }
    return out;
}

Element Field::inv(Element a) const
{
    if (a == 0) throw std::domain_error("inverse of zero in F_" + std::to_string(order()));
    const auto& t = *tables_;
    if (t.m == 1) return inverse_mod_prime(a, t.p);
    const std::uint32_t group = t.q - 1;
    return t.exp[(group - t.log[a]) % group];
}

Element Field::pow(Element a, std::uint64_t e) const noexcept
{
    Element result = 1;
    Element base = a;
    while (e) {
        if (e & 1u) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

std::string Field::polynomial_string() const
{
    const auto& poly = tables_->poly;
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = poly.size(); k-- > 0;) {
        if (poly[k] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (poly[k] != 1 || k == 0) os << poly[k];
        if (k >= 1) os << 'x';
        if (k >= 2) os << '^' << k;
    }
    return os.str();
}

} // namespace rlnc
