#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace csmcg {

// Uniform grid of integer points j in [-J, J]^n; physical point u = frame * j in an
// orthonormal frame for <.,.>_k.
struct GridSpec {
    int n = 1;
    Eigen::MatrixXd frame;      // n x n
    int half_extent = 0;        // J
    double box_radius = 0;      // R the grid was built for
    int resolution = 0;         // points per axis of F_Lambda on lattice-aligned grids, else 0
    std::int64_t level = 0;     // k on lattice-aligned grids

    int axis_points() const { return 2 * half_extent + 1; }
    std::size_t size() const;
    std::vector<int> index(std::size_t flat) const;       // entries in [-J, J]
    // returns size() when outside the box
    std::size_t flat(const std::vector<int>& j) const;
    Eigen::VectorXd point(std::size_t flat) const;
    double cell_volume() const { return std::abs(frame.determinant()); }
    bool is_boundary(std::size_t flat) const;
    bool axis_aligned() const;
};

GridSpec orthonormal_grid(int n, double step, double box_radius);

struct GridFunction {
    enum class Domain { Full, Chamber };
    GridSpec grid;
    int components = 1;
    std::vector<std::string> component_labels;
    Domain domain = Domain::Full;
    std::vector<std::complex<double>> data;  // component-major

    GridFunction() = default;
    GridFunction(const GridSpec& g, int comps = 1);
    std::complex<double>& at(int c, std::size_t p) { return data[static_cast<std::size_t>(c) * grid.size() + p]; }
    const std::complex<double>& at(int c, std::size_t p) const {
        return data[static_cast<std::size_t>(c) * grid.size() + p];
    }
    double sup() const;
    double boundary_sup() const;
    bool decays(double threshold) const { return boundary_sup() <= threshold; }
};

// sum_c sum_p f conj(g) * cell volume
std::complex<double> inner(const GridFunction& f, const GridFunction& g);
double sup_diff(const GridFunction& f, const GridFunction& g);

enum class GridEncoding { Base64, Inline };
std::string grid_to_json(const GridFunction& f, GridEncoding enc = GridEncoding::Base64);
GridFunction grid_from_json(const std::string& text);
std::string grid_to_csv(const GridFunction& f);

std::string base64_encode(const std::vector<unsigned char>& bytes);
std::vector<unsigned char> base64_decode(const std::string& s);

}  // namespace csmcg
