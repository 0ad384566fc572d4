#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "dyadic/errors.hpp"

namespace dyadic {

// Value of a discrete valuation: an integer or +infinity (v(0) = infinity).
// Infinity absorbs addition and dominates every finite value.
class Valuation {
public:
    constexpr Valuation() : finite_(false), v_(0) {}
    constexpr explicit Valuation(long long v) : finite_(true), v_(v) {}

    static constexpr Valuation infinity() { return Valuation(); }

    constexpr bool is_infinite() const { return !finite_; }
    constexpr bool is_finite() const { return finite_; }

    long long value() const {
        if (!finite_) throw internal_error("value() on infinite valuation");
        return v_;
    }

    friend constexpr Valuation operator+(Valuation a, Valuation b) {
        if (!a.finite_ || !b.finite_) return infinity();
        return Valuation(a.v_ + b.v_);
    }
    friend constexpr Valuation operator-(Valuation a, long long n) {
        if (!a.finite_) return infinity();
        return Valuation(a.v_ - n);
    }
    friend constexpr Valuation operator+(Valuation a, long long n) {
        if (!a.finite_) return infinity();
        return Valuation(a.v_ + n);
    }
    friend constexpr Valuation min(Valuation a, Valuation b) {
        return a < b ? a : b;
    }

    // infinity > n for every integer n
    friend constexpr bool operator<(Valuation a, Valuation b) {
        if (!a.finite_) return false;
        if (!b.finite_) return true;
        return a.v_ < b.v_;
    }
    friend constexpr bool operator>(Valuation a, Valuation b) { return b < a; }
    friend constexpr bool operator<=(Valuation a, Valuation b) { return !(b < a); }
    friend constexpr bool operator>=(Valuation a, Valuation b) { return !(a < b); }
    friend constexpr bool operator==(Valuation a, Valuation b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.v_ == b.v_;
    }

    friend constexpr bool operator==(Valuation a, long long n) { return a.finite_ && a.v_ == n; }
    friend constexpr bool operator<(Valuation a, long long n) { return a.finite_ && a.v_ < n; }
    friend constexpr bool operator<=(Valuation a, long long n) { return a.finite_ && a.v_ <= n; }
    friend constexpr bool operator>(Valuation a, long long n) { return !a.finite_ || a.v_ > n; }
    friend constexpr bool operator>=(Valuation a, long long n) { return !a.finite_ || a.v_ >= n; }

    std::string str() const { return finite_ ? std::to_string(v_) : "inf"; }

private:
    bool finite_;
    long long v_;
};

} // namespace dyadic
