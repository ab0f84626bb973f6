#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rieszlab {

using cplx = std::complex<double>;

// Uniform grid on [-L, L)^d with n points per axis (n even).
// Nodes: x_m = -L + m h with h = 2L/n. Dual nodes: xi_k = (k - n/2) pi / L.
class Grid {
public:
    Grid(int d, double half_width, int points_per_axis);

    int dim() const { return d_; }
    double half_width() const { return L_; }
    int points_per_axis() const { return n_; }
    double spacing() const { return h_; }
    double dual_spacing() const;  // pi / L
    std::size_t size() const { return size_; }

    double node(int m) const { return -L_ + m * h_; }
    double frequency(int k) const;  // (k - n/2) pi / L

    // Row-major flattening: axis 0 is slowest.
    std::size_t flat(std::span<const int> idx) const;
    void unflatten(std::size_t flat, std::span<int> idx) const;
    // Spatial coordinates of a flattened node.
    void coords(std::size_t flat, std::span<double> x) const;
    void dual_coords(std::size_t flat, std::span<double> xi) const;

    // Index of the node nearest to the origin (the node at exactly 0 since n is even).
    std::size_t origin_index() const;

    bool operator==(const Grid& o) const = default;
    std::string describe() const;

private:
    int d_;
    double L_;
    int n_;
    double h_;
    std::size_t size_;
};

enum class DomainTag { spatial, frequency };

std::string to_string(DomainTag t);

// Values of a function on a grid (spatial) or on its dual grid (frequency).
struct SampledField {
    Grid grid;
    std::vector<cplx> values;
    DomainTag tag = DomainTag::spatial;

    SampledField(Grid g, DomainTag t = DomainTag::spatial);
    SampledField(Grid g, std::vector<cplx> v, DomainTag t = DomainTag::spatial);

    // Samples f at every spatial node (or every dual node when tag is frequency).
    static SampledField sample(const Grid& g, const std::function<cplx(std::span<const double>)>& f,
                               DomainTag t = DomainTag::spatial);

    std::size_t size() const { return values.size(); }
    cplx& operator[](std::size_t i) { return values[i]; }
    const cplx& operator[](std::size_t i) const { return values[i]; }

    double max_abs() const;
    // Largest |value| over nodes on the outer face of the box (any index 0 or n-1).
    double edge_max_abs() const;
};

SampledField operator+(const SampledField& a, const SampledField& b);
SampledField operator-(const SampledField& a, const SampledField& b);
SampledField operator*(cplx s, const SampledField& a);

// Multilinear interpolation of a spatial field at x. Points outside [x_0, x_{n-1}]^d give 0 when
// zero_outside is set and throw RangeError otherwise.
cplx interpolate(const SampledField& f, std::span<const double> x, bool zero_outside = false);

// CSV: "# d=<d> L=<L> n=<n> tag=<spatial|frequency>" then "index,re,im" rows.
void write_csv(std::ostream& os, const SampledField& f);
void write_csv(const std::string& path, const SampledField& f);
SampledField read_csv(std::istream& is);
SampledField read_csv(const std::string& path);

}  // namespace rieszlab
