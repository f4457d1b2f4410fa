#include "dirichlet_laplacian.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace pgap::detail {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct DirichletLaplacianInverse::Plan {
    fftw_plan plan = nullptr;
    std::size_t size = 0;
};

DirichletLaplacianInverse::DirichletLaplacianInverse(const MeshedDomain& domain)
    : domain_(domain), plan_(std::make_unique<Plan>()) {
    const int nd = domain.n_dim();
    std::vector<int> dims(static_cast<std::size_t>(nd));
    std::vector<fftw_r2r_kind> kinds(static_cast<std::size_t>(nd), FFTW_RODFT00);
    std::vector<std::vector<double>> mu(static_cast<std::size_t>(nd));
    // RODFT00 is 2x the sine transform, and the sine transform squared is (n+1)/2.
    double normalization = 1.0;
    for (int ax = 0; ax < nd; ++ax) {
        const int n = domain.resolution(ax);
        const double h = domain.spacing(ax);
        dims[static_cast<std::size_t>(ax)] = n;
        normalization /= 2.0 * (n + 1);
        auto& m = mu[static_cast<std::size_t>(ax)];
        m.resize(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            const double s = std::sin(std::numbers::pi * (k + 1) / (2.0 * (n + 1)));
            m[static_cast<std::size_t>(k)] = 4.0 / (h * h) * s * s;
        }
    }

    plan_->size = domain.size();
    inverse_symbol_.resize(plan_->size);
    for (std::size_t flat = 0; flat < plan_->size; ++flat) {
        const auto idx = domain.unflatten(flat);
        double eig = 0.0;
        for (int ax = 0; ax < nd; ++ax) {
            eig += mu[static_cast<std::size_t>(ax)][static_cast<std::size_t>(idx[static_cast<std::size_t>(ax)])];
        }
        inverse_symbol_[flat] = normalization / eig;
    }

    std::vector<double> scratch(plan_->size);
    std::lock_guard lock(planner_mutex());
    plan_->plan = fftw_plan_r2r(nd, dims.data(), scratch.data(), scratch.data(), kinds.data(),
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
}

DirichletLaplacianInverse::~DirichletLaplacianInverse() {
    if (plan_ && plan_->plan) {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_->plan);
    }
}

std::vector<double> DirichletLaplacianInverse::apply(const std::vector<double>& r) const {
    std::vector<double> data = r;
    fftw_execute_r2r(plan_->plan, data.data(), data.data());
    for (std::size_t k = 0; k < data.size(); ++k) data[k] *= inverse_symbol_[k];
    fftw_execute_r2r(plan_->plan, data.data(), data.data());
    return data;
}

double DirichletLaplacianInverse::dual_norm_squared(const std::vector<double>& r) const {
    std::vector<double> data = r;
    fftw_execute_r2r(plan_->plan, data.data(), data.data());
    double s = 0.0;
    for (std::size_t k = 0; k < data.size(); ++k) s += data[k] * data[k] * inverse_symbol_[k];
    return s;
}

}  // namespace pgap::detail
