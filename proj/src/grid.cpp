#include "lsrec/grid.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lsrec {

GridSpec::GridSpec(std::vector<int> dims) {
    if (dims.size() != 2 && dims.size() != 3)
        throw std::invalid_argument("GridSpec: need 2 or 3 dimensions");
    for (int d : dims)
        if (d < 4) throw std::invalid_argument("GridSpec: all dims must be >= 4");
    rank_ = int(dims.size());
    nx_ = dims[0];
    ny_ = dims[1];
    nz_ = rank_ == 3 ? dims[2] : 1;
}

int GridSpec::dim(int axis) const {
    switch (axis) {
        case 0: return nx_;
        case 1: return ny_;
        case 2: return nz_;
        default: throw std::out_of_range("GridSpec: axis out of range");
    }
}

std::array<double, 3> GridSpec::center() const {
    return {nx_ / 2.0, ny_ / 2.0, rank_ == 3 ? nz_ / 2.0 : 0.0};
}

ScalarField diff(const ScalarField& f, int axis, Scheme scheme) {
    const GridSpec& g = f.spec();
    if (axis < 0 || axis >= g.rank())
        throw std::out_of_range("diff: axis out of range");
    if (scheme == Scheme::Central) {
        ScalarField fw = diff(f, axis, Scheme::Forward);
        const ScalarField bw = diff(f, axis, Scheme::Backward);
        for (std::size_t n = 0; n < fw.size(); ++n) fw[n] = 0.5 * (fw[n] + bw[n]);
        return fw;
    }
    ScalarField out(g);
    const int off = scheme == Scheme::Forward ? 1 : -1;
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j)
            for (int k = 0; k < g.nz(); ++k) {
                int ii = i, jj = j, kk = k;
                if (axis == 0) ii = g.wrap(i + off, 0);
                else if (axis == 1) jj = g.wrap(j + off, 1);
                else kk = g.wrap(k + off, 2);
                double here = f(i, j, k), there = f(ii, jj, kk);
                out(i, j, k) = scheme == Scheme::Forward ? there - here : here - there;
            }
    return out;
}

VectorField gradient(const ScalarField& f, Scheme scheme) {
    const GridSpec& g = f.spec();
    VectorField out(g);
    for (int a = 0; a < g.rank(); ++a) {
        ScalarField d = diff(f, a, scheme);
        for (std::size_t n = 0; n < g.size(); ++n) out.at(n, a) = d[n];
    }
    return out;
}

ScalarField divergence(const VectorField& u, Scheme scheme) {
    const GridSpec& g = u.spec();
    ScalarField out(g);
    for (int a = 0; a < g.rank(); ++a) {
        ScalarField comp(g);
        for (std::size_t n = 0; n < g.size(); ++n) comp[n] = u.at(n, a);
        ScalarField d = diff(comp, a, scheme);
        for (std::size_t n = 0; n < g.size(); ++n) out[n] += d[n];
    }
    return out;
}

ScalarField magnitude(const VectorField& u) {
    const GridSpec& g = u.spec();
    ScalarField out(g);
    for (std::size_t n = 0; n < g.size(); ++n) {
        double s = 0;
        for (int a = 0; a < g.rank(); ++a) s += u.at(n, a) * u.at(n, a);
        out[n] = std::sqrt(s);
    }
    return out;
}

static void write_header(const GridSpec& g, std::ostream& os) {
    os << "dims: " << g.nx() << ' ' << g.ny();
    if (g.rank() == 3) os << ' ' << g.nz();
    os << '\n';
}

void dump_field(const ScalarField& f, std::ostream& os) {
    write_header(f.spec(), os);
    os.precision(17);
    for (std::size_t n = 0; n < f.size(); ++n) os << f[n] << '\n';
}

void dump_field(const VectorField& u, std::ostream& os) {
    write_header(u.spec(), os);
    os.precision(17);
    for (std::size_t n = 0; n < u.nodes(); ++n) {
        for (int a = 0; a < u.components(); ++a) {
            if (a) os << ' ';
            os << u.at(n, a);
        }
        os << '\n';
    }
}

ScalarField read_field(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("read_field: empty stream");
    std::istringstream hdr(line);
    std::string tag;
    hdr >> tag;
    if (tag != "dims:") throw std::runtime_error("read_field: bad header");
    std::vector<int> dims;
    int d;
    while (hdr >> d) dims.push_back(d);
    ScalarField f((GridSpec(dims)));
    for (std::size_t n = 0; n < f.size(); ++n)
        if (!(is >> f[n])) throw std::runtime_error("read_field: truncated data");
    return f;
}

}  // namespace lsrec
