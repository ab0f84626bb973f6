#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace rieszlab {

// Multi-index i = (i_1, ..., i_d) with nonnegative entries.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);
    static MultiIndex zero(int d) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(d), 0)); }
    static MultiIndex unit(int d, int axis);

    int dim() const { return static_cast<int>(e_.size()); }
    int operator[](int k) const { return e_[static_cast<std::size_t>(k)]; }
    const std::vector<int>& entries() const { return e_; }

    int order() const;         // |i|
    double factorial() const;  // i! = prod i_k!
    bool is_zero() const { return order() == 0; }

    MultiIndex operator+(const MultiIndex& o) const;
    // Componentwise difference; throws std::invalid_argument if any entry goes negative.
    MultiIndex operator-(const MultiIndex& o) const;
    bool operator==(const MultiIndex& o) const = default;
    // Graded lexicographic: by order first, then lexicographically.
    bool operator<(const MultiIndex& o) const;

    std::string str() const;

private:
    std::vector<int> e_;
};

// All multi-indices of dimension d with |i| <= max_order, graded lexicographic, no duplicates.
std::vector<MultiIndex> multi_indices(int d, int max_order);

// All multi-indices of dimension d with |i| == order, lexicographic.
std::vector<MultiIndex> multi_indices_of_order(int d, int order);

// x^i = prod x_k^{i_k}; 0^0 = 1.
double monomial_eval(std::span<const double> x, const MultiIndex& i);

// Multinomial k!/(i! j!) style helper: |i|! / i!.
double multinomial(const MultiIndex& i);

}  // namespace rieszlab
