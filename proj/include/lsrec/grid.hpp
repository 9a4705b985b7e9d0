#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace lsrec {

/// Regular periodic grid with unit spacing. 2D grids are stored as 3D with
/// nz == 1 so that all loops can be written once.
class GridSpec {
public:
    GridSpec() = default;
    explicit GridSpec(std::vector<int> dims);

    int rank() const { return rank_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int nz() const { return nz_; }
    int dim(int axis) const;
    std::size_t size() const { return std::size_t(nx_) * ny_ * nz_; }

    std::size_t index(int i, int j, int k) const {
        return (std::size_t(i) * ny_ + j) * nz_ + k;
    }
    /// Periodic wrap of a single index along `axis`.
    int wrap(int i, int axis) const {
        int n = dim(axis);
        i %= n;
        return i < 0 ? i + n : i;
    }
    /// Geometric center of the domain box [0,nx] x [0,ny] (x [0,nz]).
    std::array<double, 3> center() const;

    bool operator==(const GridSpec& o) const {
        return nx_ == o.nx_ && ny_ == o.ny_ && nz_ == o.nz_ && rank_ == o.rank_;
    }

private:
    int nx_ = 0, ny_ = 0, nz_ = 1;
    int rank_ = 0;
};

class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const GridSpec& spec, double fill = 0.0)
        : spec_(spec), v_(spec.size(), fill) {}

    const GridSpec& spec() const { return spec_; }
    double& operator()(int i, int j, int k = 0) { return v_[spec_.index(i, j, k)]; }
    double operator()(int i, int j, int k = 0) const { return v_[spec_.index(i, j, k)]; }
    double& operator[](std::size_t n) { return v_[n]; }
    double operator[](std::size_t n) const { return v_[n]; }
    std::size_t size() const { return v_.size(); }
    std::vector<double>& data() { return v_; }
    const std::vector<double>& data() const { return v_; }

private:
    GridSpec spec_;
    std::vector<double> v_;
};

/// d-vector per node, components interleaved.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(const GridSpec& spec)
        : spec_(spec), v_(spec.size() * spec.rank(), 0.0) {}

    const GridSpec& spec() const { return spec_; }
    int components() const { return spec_.rank(); }
    double& at(std::size_t node, int c) { return v_[node * spec_.rank() + c]; }
    double at(std::size_t node, int c) const { return v_[node * spec_.rank() + c]; }
    std::size_t nodes() const { return spec_.size(); }
    std::vector<double>& data() { return v_; }
    const std::vector<double>& data() const { return v_; }

private:
    GridSpec spec_;
    std::vector<double> v_;
};

enum class Scheme { Forward, Backward, Central };

/// Periodic finite difference along `axis`. Central = (forward + backward)/2.
ScalarField diff(const ScalarField& f, int axis, Scheme scheme);

VectorField gradient(const ScalarField& f, Scheme scheme);
ScalarField divergence(const VectorField& u, Scheme scheme);

/// Pointwise Euclidean norm of a vector field.
ScalarField magnitude(const VectorField& u);

/// Text dump: header "dims: M N [P]" then one value per node, row-major.
void dump_field(const ScalarField& f, std::ostream& os);
void dump_field(const VectorField& u, std::ostream& os);
ScalarField read_field(std::istream& is);

}  // namespace lsrec
