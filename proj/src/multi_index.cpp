#include "cdcurv/multi_index.hpp"

#include <algorithm>

namespace cdcurv {

MultiIndex::MultiIndex(std::vector<int> entries) : e_(std::move(entries)) {
    if (e_.empty()) throw ConfigError("multi-index must have dimension >= 1");
    for (int v : e_) {
        if (v < 0) throw ConfigError("multi-index entries must be non-negative");
    }
}

MultiIndex MultiIndex::zero(int m) {
    return MultiIndex(std::vector<int>(static_cast<size_t>(m), 0));
}

MultiIndex MultiIndex::unit(int m, int i) {
    std::vector<int> e(static_cast<size_t>(m), 0);
    e.at(static_cast<size_t>(i)) = 1;
    return MultiIndex(std::move(e));
}

int MultiIndex::degree() const {
    int s = 0;
    for (int v : e_) s += v;
    return s;
}

BigInt factorial(int n) {
    if (n < 0) throw ConfigError("factorial of negative integer");
    if (n > kMaxDegree) throw CapacityError("degree exceeds the exact-integer cap of 64");
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt MultiIndex::factorial() const {
    if (degree() > kMaxDegree) throw CapacityError("degree exceeds the exact-integer cap of 64");
    BigInt r = 1;
    for (int v : e_) r *= cdcurv::factorial(v);
    return r;
}

MultiIndex MultiIndex::plus(int i, int count) const {
    std::vector<int> e = e_;
    e.at(static_cast<size_t>(i)) += count;
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::minus(int i) const {
    if (e_.at(static_cast<size_t>(i)) == 0)
        throw ConfigError("cannot decrement a zero multi-index entry");
    std::vector<int> e = e_;
    e[static_cast<size_t>(i)] -= 1;
    return MultiIndex(std::move(e));
}

bool MultiIndex::leq(const MultiIndex& beta) const {
    if (dim() != beta.dim()) return false;
    for (int i = 0; i < dim(); ++i)
        if (e_[static_cast<size_t>(i)] > beta[i]) return false;
    return true;
}

MultiIndex MultiIndex::sub(const MultiIndex& beta) const {
    if (!beta.leq(*this)) throw ConfigError("multi-index subtraction would go negative");
    std::vector<int> e = e_;
    for (int i = 0; i < dim(); ++i) e[static_cast<size_t>(i)] -= beta[i];
    return MultiIndex(std::move(e));
}

BigInt multinomial(const MultiIndex& alpha) {
    return factorial(alpha.degree()) / alpha.factorial();
}

bool graded_less(const MultiIndex& a, const MultiIndex& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    // within a degree: lexicographically descending entries
    return a.entries() > b.entries();
}

namespace {

void emit_degree(int m, int slot, int remaining, std::vector<int>& cur,
                 std::vector<MultiIndex>& out) {
    if (slot == m - 1) {
        cur[static_cast<size_t>(slot)] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (int v = remaining; v >= 0; --v) {
        cur[static_cast<size_t>(slot)] = v;
        emit_degree(m, slot + 1, remaining - v, cur, out);
    }
}

}  // namespace

std::vector<MultiIndex> enumerate_basis(int m, int N) {
    if (m < 1) throw ConfigError("ball dimension m must be >= 1");
    if (N < 0) throw ConfigError("truncation degree must be >= 0");
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<size_t>(m), 0);
    for (int d = 0; d <= N; ++d) emit_degree(m, 0, d, cur, out);
    return out;
}

}  // namespace cdcurv
