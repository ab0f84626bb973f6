#include "rieszlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "rieszlab/errors.hpp"

namespace rieszlab {

Grid::Grid(int d, double half_width, int points_per_axis) : d_(d), L_(half_width), n_(points_per_axis) {
    if (d < 1 || d > 3) throw RangeError("grid dimension must be 1, 2 or 3");
    if (!(half_width > 0.0) || !std::isfinite(half_width)) throw RangeError("grid half-width must be positive");
    if (points_per_axis < 2 || points_per_axis % 2 != 0) throw RangeError("points per axis must be even and >= 2");
    h_ = 2.0 * L_ / n_;
    size_ = 1;
    for (int k = 0; k < d_; ++k) size_ *= static_cast<std::size_t>(n_);
}

double Grid::dual_spacing() const { return std::numbers::pi / L_; }

double Grid::frequency(int k) const { return (k - n_ / 2) * dual_spacing(); }

std::size_t Grid::flat(std::span<const int> idx) const {
    std::size_t f = 0;
    for (int k = 0; k < d_; ++k) f = f * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx[static_cast<std::size_t>(k)]);
    return f;
}

void Grid::unflatten(std::size_t flat, std::span<int> idx) const {
    for (int k = d_ - 1; k >= 0; --k) {
        idx[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<std::size_t>(n_));
        flat /= static_cast<std::size_t>(n_);
    }
}

void Grid::coords(std::size_t flat, std::span<double> x) const {
    for (int k = d_ - 1; k >= 0; --k) {
        x[static_cast<std::size_t>(k)] = node(static_cast<int>(flat % static_cast<std::size_t>(n_)));
        flat /= static_cast<std::size_t>(n_);
    }
}

void Grid::dual_coords(std::size_t flat, std::span<double> xi) const {
    for (int k = d_ - 1; k >= 0; --k) {
        xi[static_cast<std::size_t>(k)] = frequency(static_cast<int>(flat % static_cast<std::size_t>(n_)));
        flat /= static_cast<std::size_t>(n_);
    }
}

std::size_t Grid::origin_index() const {
    std::array<int, 3> idx{n_ / 2, n_ / 2, n_ / 2};
    return flat(std::span<const int>(idx.data(), static_cast<std::size_t>(d_)));
}

std::string Grid::describe() const {
    std::ostringstream os;
    os << "d=" << d_ << " L=" << std::setprecision(17) << L_ << " n=" << n_;
    return os.str();
}

std::string to_string(DomainTag t) { return t == DomainTag::spatial ? "spatial" : "frequency"; }

SampledField::SampledField(Grid g, DomainTag t) : grid(g), values(g.size(), cplx{}), tag(t) {}

SampledField::SampledField(Grid g, std::vector<cplx> v, DomainTag t) : grid(g), values(std::move(v)), tag(t) {
    if (values.size() != grid.size()) throw RangeError("SampledField: value count does not match grid");
}

SampledField SampledField::sample(const Grid& g, const std::function<cplx(std::span<const double>)>& f,
                                  DomainTag t) {
    SampledField out(g, t);
    std::array<double, 3> x{};
    std::span<double> xs(x.data(), static_cast<std::size_t>(g.dim()));
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (t == DomainTag::spatial)
            g.coords(i, xs);
        else
            g.dual_coords(i, xs);
        out.values[i] = f(xs);
    }
    return out;
}

double SampledField::max_abs() const {
    double m = 0.0;
    for (const auto& v : values)
        if (std::isfinite(v.real()) && std::isfinite(v.imag())) m = std::max(m, std::abs(v));
    return m;
}

double SampledField::edge_max_abs() const {
    const int n = grid.points_per_axis();
    std::array<int, 3> idx{};
    std::span<int> is(idx.data(), static_cast<std::size_t>(grid.dim()));
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        grid.unflatten(i, is);
        bool edge = false;
        for (int v : is) edge = edge || v == 0 || v == n - 1;
        if (edge) m = std::max(m, std::abs(values[i]));
    }
    return m;
}

namespace {
void check_compatible(const SampledField& a, const SampledField& b) {
    if (!(a.grid == b.grid) || a.tag != b.tag) throw DomainTagError("fields live on different grids or domains");
}
}  // namespace

SampledField operator+(const SampledField& a, const SampledField& b) {
    check_compatible(a, b);
    SampledField r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r.values[i] += b.values[i];
    return r;
}

SampledField operator-(const SampledField& a, const SampledField& b) {
    check_compatible(a, b);
    SampledField r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r.values[i] -= b.values[i];
    return r;
}

SampledField operator*(cplx s, const SampledField& a) {
    SampledField r = a;
    for (auto& v : r.values) v *= s;
    return r;
}

cplx interpolate(const SampledField& f, std::span<const double> x, bool zero_outside) {
    const Grid& g = f.grid;
    const int d = g.dim();
    if (static_cast<int>(x.size()) != d) throw RangeError("interpolate: point dimension mismatch");
    const int n = g.points_per_axis();
    std::array<int, 3> base{};
    std::array<double, 3> frac{};
    for (int a = 0; a < d; ++a) {
        const double u = (x[static_cast<std::size_t>(a)] + g.half_width()) / g.spacing();
        if (!(u >= 0.0 && u <= n - 1)) {
            if (zero_outside) return {};
            throw RangeError("interpolate: point outside the sampled box");
        }
        int m = static_cast<int>(std::floor(u));
        if (m >= n - 1) m = n - 2;
        base[static_cast<std::size_t>(a)] = m;
        frac[static_cast<std::size_t>(a)] = u - m;
    }
    cplx s{};
    std::array<int, 3> idx{};
    for (int corner = 0; corner < (1 << d); ++corner) {
        double w = 1.0;
        for (int a = 0; a < d; ++a) {
            const bool up = (corner >> a) & 1;
            const auto A = static_cast<std::size_t>(a);
            idx[A] = base[A] + (up ? 1 : 0);
            w *= up ? frac[A] : 1.0 - frac[A];
        }
        if (w == 0.0) continue;
        s += w * f.values[g.flat(std::span<const int>(idx.data(), static_cast<std::size_t>(d)))];
    }
    return s;
}

void write_csv(std::ostream& os, const SampledField& f) {
    os << "# d=" << f.grid.dim() << " L=" << std::setprecision(17) << f.grid.half_width()
       << " n=" << f.grid.points_per_axis() << " tag=" << to_string(f.tag) << "\n";
    os << "index,re,im\n";
    os << std::setprecision(17);
    for (std::size_t i = 0; i < f.size(); ++i) os << i << "," << f.values[i].real() << "," << f.values[i].imag() << "\n";
}

void write_csv(const std::string& path, const SampledField& f) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open '" + path + "' for writing");
    write_csv(os, f);
}

namespace {
double parse_double(const std::string& s) {
    // strtod accepts "nan"/"inf" which stream extraction does not.
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw ConfigError("malformed number '" + s + "' in field CSV");
    return v;
}
}  // namespace

SampledField read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("#", 0) != 0) throw ConfigError("field CSV: missing '# d=...' header");
    int d = 0, n = 0;
    double L = 0.0;
    std::string tag;
    {
        std::istringstream hs(line.substr(1));
        std::string tok;
        while (hs >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "d") d = std::stoi(val);
            else if (key == "L") L = parse_double(val);
            else if (key == "n") n = std::stoi(val);
            else if (key == "tag") tag = val;
        }
    }
    if (tag != "spatial" && tag != "frequency") throw ConfigError("field CSV: tag must be spatial or frequency");
    Grid g(d, L, n);
    SampledField f(g, tag == "spatial" ? DomainTag::spatial : DomainTag::frequency);
    std::vector<bool> seen(g.size(), false);
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("index", 0) == 0) continue;
        std::istringstream ls(line);
        std::string a, b, c;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c))
            throw ConfigError("field CSV: malformed row '" + line + "'");
        const auto idx = static_cast<std::size_t>(std::stoull(a));
        if (idx >= g.size()) throw ConfigError("field CSV: index out of range");
        f.values[idx] = cplx(parse_double(b), parse_double(c));
        seen[idx] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw ConfigError("field CSV: missing rows");
    return f;
}

SampledField read_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open field CSV '" + path + "'");
    return read_csv(is);
}

}  // namespace rieszlab
