#include "popledger/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace popledger {

namespace {

BigInt pow10(unsigned exponent)
{
    return boost::multiprecision::pow(BigInt(10), exponent);
}

// Digits of |n| in base 10.
std::size_t digit_count(const BigInt& n)
{
    return BigInt(boost::multiprecision::abs(n)).str().size();
}

std::string group_thousands(std::string digits)
{
    std::string grouped;
    grouped.reserve(digits.size() + digits.size() / 3);
    std::size_t lead = digits.size() % 3 == 0 ? 3 : digits.size() % 3;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i != 0 && (i + 3 - lead) % 3 == 0) {
            grouped.push_back(',');
        }
        grouped.push_back(digits[i]);
    }
    return grouped;
}

// Rounds |value| to `sig` significant digits: mantissa (exactly `sig`
// digits) and decimal exponent such that result = mantissa * 10^(e-sig+1).
void significant_round(const Rational& value, unsigned sig, BigInt& mantissa, long& exponent)
{
    BigInt num = boost::multiprecision::abs(numerator(value));
    BigInt den = denominator(value);
    long e = static_cast<long>(digit_count(num)) - static_cast<long>(digit_count(den));
    // e is within 1 of the true decimal exponent; settle by comparison.
    auto at_least = [&](long exp) { // |value| >= 10^exp
        if (exp >= 0) {
            return num >= den * pow10(static_cast<unsigned>(exp));
        }
        return num * pow10(static_cast<unsigned>(-exp)) >= den;
    };
    while (!at_least(e)) {
        --e;
    }
    while (at_least(e + 1)) {
        ++e;
    }

    long shift = static_cast<long>(sig) - 1 - e;
    BigInt scaled_num = num;
    BigInt scaled_den = den;
    if (shift >= 0) {
        scaled_num *= pow10(static_cast<unsigned>(shift));
    } else {
        scaled_den *= pow10(static_cast<unsigned>(-shift));
    }
    BigInt q = scaled_num / scaled_den;
    BigInt r = scaled_num % scaled_den;
    if (2 * r > scaled_den || (2 * r == scaled_den && q % 2 != 0)) {
        ++q;
    }
    if (q == pow10(sig)) { // rounding carried into an extra digit
        q = pow10(sig - 1);
        ++e;
    }
    mantissa = q;
    exponent = e;
}

} // namespace

BigInt to_bigint(u128 value)
{
    BigInt hi = static_cast<std::uint64_t>(value >> 64);
    BigInt lo = static_cast<std::uint64_t>(value);
    return (hi << 64) | lo;
}

BigInt to_bigint(Poplets value)
{
    return to_bigint(value.raw());
}

Poplets to_poplets(const BigInt& value)
{
    check(value >= 0, Errc::Overflow, "negative amount");
    check((value >> 128) == 0, Errc::Overflow, "amount beyond 128 bits");
    std::uint64_t lo = static_cast<std::uint64_t>(value & BigInt(~std::uint64_t{0}));
    std::uint64_t hi = static_cast<std::uint64_t>((value >> 64) & BigInt(~std::uint64_t{0}));
    return Poplets{(static_cast<u128>(hi) << 64) | lo};
}

std::string ratio_str(const Rational& value)
{
    return numerator(value).str() + "/" + denominator(value).str();
}

BigInt round_half_even(const Rational& value)
{
    BigInt num = numerator(value);
    BigInt den = denominator(value);
    bool negative = num < 0;
    BigInt a = boost::multiprecision::abs(num);
    BigInt q = a / den;
    BigInt r = a % den;
    if (2 * r > den || (2 * r == den && q % 2 != 0)) {
        ++q;
    }
    return negative ? BigInt(-q) : q;
}

Rational round_significant(const Rational& value, unsigned sig_digits)
{
    if (value == 0) {
        return Rational(0);
    }
    BigInt mantissa;
    long exponent = 0;
    significant_round(value, sig_digits, mantissa, exponent);
    long scale = exponent - static_cast<long>(sig_digits) + 1;
    Rational out(mantissa);
    if (scale >= 0) {
        out *= Rational(pow10(static_cast<unsigned>(scale)));
    } else {
        out /= Rational(pow10(static_cast<unsigned>(-scale)));
    }
    if (value < 0) {
        out = -out;
    }
    return out;
}

std::string decimal_str(const Rational& value, unsigned sig_digits)
{
    if (value == 0) {
        return "0";
    }
    BigInt mantissa;
    long exponent = 0;
    significant_round(value, sig_digits, mantissa, exponent);
    std::string digits = mantissa.str();
    std::string out;
    if (exponent >= static_cast<long>(sig_digits) - 1) {
        out = digits + std::string(static_cast<std::size_t>(exponent - sig_digits + 1), '0');
    } else if (exponent >= 0) {
        out = digits.substr(0, static_cast<std::size_t>(exponent + 1)) + "."
            + digits.substr(static_cast<std::size_t>(exponent + 1));
    } else {
        out = "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + digits;
    }
    return value < 0 ? "-" + out : out;
}

std::string fixed_str(const Rational& value, unsigned decimals)
{
    Rational scaled = value * Rational(pow10(decimals));
    BigInt n = round_half_even(scaled);
    bool negative = n < 0;
    std::string digits = BigInt(boost::multiprecision::abs(n)).str();
    if (digits.size() <= decimals) {
        digits.insert(0, decimals + 1 - digits.size(), '0');
    }
    std::string out = digits.substr(0, digits.size() - decimals);
    if (decimals > 0) {
        out += "." + digits.substr(digits.size() - decimals);
    }
    return negative ? "-" + out : out;
}

std::string grouped_fixed_str(const Rational& value, unsigned decimals)
{
    std::string flat = fixed_str(value, decimals);
    bool negative = !flat.empty() && flat.front() == '-';
    std::string body = negative ? flat.substr(1) : flat;
    auto dot = body.find('.');
    std::string intpart = dot == std::string::npos ? body : body.substr(0, dot);
    std::string rest = dot == std::string::npos ? "" : body.substr(dot);
    std::string grouped = group_thousands(intpart) + rest;
    return negative ? "-" + grouped : grouped;
}

namespace {

// cpp_int's string constructor treats a leading 0 as an octal prefix.
BigInt bigint_from_digits(std::string digits)
{
    std::size_t first = digits.find_first_not_of('0');
    if (first == std::string::npos) {
        return BigInt(0);
    }
    return BigInt{digits.substr(first)};
}

} // namespace

std::optional<Rational> parse_number(std::string_view text)
{
    if (text.empty()) {
        return std::nullopt;
    }
    bool negative = false;
    if (text.front() == '-') {
        negative = true;
        text.remove_prefix(1);
        if (text.empty()) {
            return std::nullopt;
        }
    }

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto p = text.substr(0, slash);
        auto q = text.substr(slash + 1);
        if (p.empty() || q.empty()
            || p.find_first_not_of("0123456789") != std::string_view::npos
            || q.find_first_not_of("0123456789") != std::string_view::npos) {
            return std::nullopt;
        }
        BigInt den = bigint_from_digits(std::string(q));
        if (den == 0) {
            return std::nullopt;
        }
        Rational out{bigint_from_digits(std::string(p)), den};
        return negative ? -out : out;
    }

    std::string_view mantissa = text;
    long exp10 = 0;
    if (auto epos = text.find_first_of("eE"); epos != std::string_view::npos) {
        mantissa = text.substr(0, epos);
        auto exp_text = text.substr(epos + 1);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (exp_text.empty() || exp_text.size() > 6
            || exp_text.find_first_not_of("0123456789") != std::string_view::npos) {
            return std::nullopt;
        }
        exp10 = std::stol(std::string(exp_text));
        if (exp_negative) {
            exp10 = -exp10;
        }
    }

    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false;
    for (char c : mantissa) {
        if (c == '.') {
            if (seen_dot) {
                return std::nullopt;
            }
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (seen_dot) {
                ++frac_digits;
            }
        } else {
            return std::nullopt;
        }
    }
    if (digits.empty()) {
        return std::nullopt;
    }

    Rational out{bigint_from_digits(digits)};
    long scale = exp10 - frac_digits;
    if (scale >= 0) {
        out *= Rational(pow10(static_cast<unsigned>(scale)));
    } else {
        out /= Rational(pow10(static_cast<unsigned>(-scale)));
    }
    return negative ? -out : out;
}

} // namespace popledger
