#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "popledger/poplets.hpp"

namespace popledger {

// Exact rational arithmetic for everything that is a ratio rather than a
// ledger amount: conversion rates, shares of the value space, reward
// factors, income estimates. Never floating point; rendering rounds once,
// at the edge, half-to-even.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt to_bigint(u128 value);
BigInt to_bigint(Poplets value);

// Checked narrowing back into the ledger's amount range.
Poplets to_poplets(const BigInt& value);

// Canonical "p/q" form, reduced, q >= 1. Used verbatim in CSV cells.
std::string ratio_str(const Rational& value);

// Round to `sig_digits` significant digits (half-even) and render in plain
// positional notation, keeping trailing zeros up to the significant width.
std::string decimal_str(const Rational& value, unsigned sig_digits);

// Fixed number of decimal places, half-even, no digit grouping.
std::string fixed_str(const Rational& value, unsigned decimals);

// fixed_str with thousands separators in the integer part: "3,850.00".
std::string grouped_fixed_str(const Rational& value, unsigned decimals);

// Exact half-even rounding of `value` to `sig_digits` significant digits.
Rational round_significant(const Rational& value, unsigned sig_digits);

// Nearest integer, ties to even.
BigInt round_half_even(const Rational& value);

// Accepts plain integers, `NNNeK` shorthand (NNN * 10^K), decimal
// fractions like "0.02", and exact "p/q" ratios. Used by the CLI and the
// scenario parser; returns nullopt on malformed input.
std::optional<Rational> parse_number(std::string_view text);

} // namespace popledger
