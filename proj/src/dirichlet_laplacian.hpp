#pragma once

#include <memory>
#include <vector>

#include "pgap/grid.hpp"

namespace pgap::detail {

/// Exact inverse of the 3-, 5- or 7-point Dirichlet Laplacian on a box grid, applied
/// through a multidimensional type-I sine transform (FFTW RODFT00).
class DirichletLaplacianInverse {
public:
    explicit DirichletLaplacianInverse(const MeshedDomain& domain);
    ~DirichletLaplacianInverse();
    DirichletLaplacianInverse(const DirichletLaplacianInverse&) = delete;
    DirichletLaplacianInverse& operator=(const DirichletLaplacianInverse&) = delete;

    /// L^{-1} r, where L is the positive discrete -Delta in strong form.
    [[nodiscard]] std::vector<double> apply(const std::vector<double>& r) const;

    /// <r, L^{-1} r> (Euclidean pairing), using a single transform.
    [[nodiscard]] double dual_norm_squared(const std::vector<double>& r) const;

private:
    struct Plan;

    MeshedDomain domain_;
    std::vector<double> inverse_symbol_;  // normalization / eigenvalue, per mode
    std::unique_ptr<Plan> plan_;
};

}  // namespace pgap::detail
