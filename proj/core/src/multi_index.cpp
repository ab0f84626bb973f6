#include "rieszlab/multi_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rieszlab {

namespace {
double fact(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }
}  // namespace

MultiIndex::MultiIndex(std::vector<int> entries) : e_(std::move(entries)) {
    for (int v : e_)
        if (v < 0) throw std::invalid_argument("MultiIndex entries must be nonnegative");
}

MultiIndex MultiIndex::unit(int d, int axis) {
    std::vector<int> e(static_cast<std::size_t>(d), 0);
    e.at(static_cast<std::size_t>(axis)) = 1;
    return MultiIndex(std::move(e));
}

int MultiIndex::order() const { return std::accumulate(e_.begin(), e_.end(), 0); }

double MultiIndex::factorial() const {
    double f = 1.0;
    for (int v : e_) f *= fact(v);
    return f;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
    if (o.dim() != dim()) throw std::invalid_argument("MultiIndex dimension mismatch");
    std::vector<int> r(e_);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] += o.e_[k];
    return MultiIndex(std::move(r));
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
    if (o.dim() != dim()) throw std::invalid_argument("MultiIndex dimension mismatch");
    std::vector<int> r(e_);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] -= o.e_[k];
    return MultiIndex(std::move(r));
}

bool MultiIndex::operator<(const MultiIndex& o) const {
    const int a = order(), b = o.order();
    if (a != b) return a < b;
    return e_ < o.e_;
}

std::string MultiIndex::str() const {
    std::string s = "(";
    for (std::size_t k = 0; k < e_.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(e_[k]);
    }
    return s + ")";
}

std::vector<MultiIndex> multi_indices_of_order(int d, int order) {
    if (d <= 0) throw std::invalid_argument("dimension must be positive");
    std::vector<MultiIndex> out;
    if (order < 0) return out;
    std::vector<int> e(static_cast<std::size_t>(d), 0);
    // Enumerate compositions of `order` into d parts in lexicographic order.
    auto rec = [&](auto&& self, int axis, int left) -> void {
        if (axis == d - 1) {
            e[static_cast<std::size_t>(axis)] = left;
            out.emplace_back(e);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            e[static_cast<std::size_t>(axis)] = v;
            self(self, axis + 1, left - v);
        }
    };
    rec(rec, 0, order);
    return out;
}

std::vector<MultiIndex> multi_indices(int d, int max_order) {
    std::vector<MultiIndex> out;
    for (int m = 0; m <= max_order; ++m) {
        auto layer = multi_indices_of_order(d, m);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

double monomial_eval(std::span<const double> x, const MultiIndex& i) {
    if (static_cast<int>(x.size()) != i.dim()) throw std::invalid_argument("monomial_eval: dimension mismatch");
    double r = 1.0;
    for (int k = 0; k < i.dim(); ++k)
        for (int p = 0; p < i[k]; ++p) r *= x[static_cast<std::size_t>(k)];
    return r;
}

double multinomial(const MultiIndex& i) { return fact(i.order()) / i.factorial(); }

}  // namespace rieszlab
