#pragma once

#include <compare>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cdcurv/errors.hpp"

namespace cdcurv {

using BigInt = boost::multiprecision::cpp_int;

// Exact integer combinatorics are guaranteed up to this total degree.
inline constexpr int kMaxDegree = 64;

// alpha = (alpha_1, ..., alpha_m), all entries >= 0.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);

    static MultiIndex zero(int m);
    static MultiIndex unit(int m, int i);

    int dim() const { return static_cast<int>(e_.size()); }
    int degree() const;                // |alpha|
    int operator[](int i) const { return e_[static_cast<size_t>(i)]; }
    const std::vector<int>& entries() const { return e_; }

    BigInt factorial() const;          // alpha!

    MultiIndex plus(int i, int count = 1) const;
    MultiIndex minus(int i) const;     // requires entry i > 0
    bool leq(const MultiIndex& beta) const;      // componentwise
    MultiIndex sub(const MultiIndex& beta) const;  // requires beta <= *this

    bool operator==(const MultiIndex&) const = default;

private:
    std::vector<int> e_;
};

BigInt factorial(int n);

// |alpha|! / alpha!, exact.
BigInt multinomial(const MultiIndex& alpha);

// All alpha with |alpha| <= N in graded order: by degree, then by entries in
// lexicographically descending order, e.g. (2,0),(1,1),(0,2). This ordering
// is the library-wide basis-index convention.
std::vector<MultiIndex> enumerate_basis(int m, int N);

// True iff a precedes b in the graded basis order.
bool graded_less(const MultiIndex& a, const MultiIndex& b);

}  // namespace cdcurv
