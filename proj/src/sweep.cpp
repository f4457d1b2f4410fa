#include "pgap/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "pgap/bounds.hpp"
#include "pgap/solver1d.hpp"

namespace pgap {

MeshedDomain make_named_domain(const std::string& name, int grid) {
    if (grid < 1) throw InvalidParameter("grid must be >= 1");
    std::vector<double> lengths;
    if (name == "interval") {
        lengths = {1.0};
    } else if (name == "square") {
        lengths = {1.0, 1.0};
    } else if (name == "cube") {
        lengths = {1.0, 1.0, 1.0};
    } else if (name == "rect") {
        lengths = {2.0, 1.0};
    } else if (name.rfind("box:", 0) == 0) {
        std::istringstream ss(name.substr(4));
        std::string tok;
        while (std::getline(ss, tok, 'x')) {
            try {
                std::size_t used = 0;
                lengths.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw InvalidParameter("");
            } catch (const std::exception&) {
                throw InvalidParameter("bad box side '" + tok + "' in domain '" + name + "'");
            }
        }
    } else {
        throw InvalidParameter("unknown domain '" + name + "'");
    }
    if (lengths.empty() || lengths.size() > kMaxDim) {
        throw InvalidParameter("domain '" + name + "' must have 1 to 3 sides");
    }
    std::vector<std::array<double, 2>> ext;
    for (double l : lengths) ext.push_back({0.0, l});
    std::vector<int> res(lengths.size(), grid);
    return MeshedDomain::make(ext, res);
}

double lambda2_for(const MeshedDomain& domain, double p, const Eigenpair& eig1, double tol,
                   int axis, EstimateKind& kind, std::optional<SplitUpperBound>* split) {
    if (p == 2.0) {
        kind = EstimateKind::Exact;
        return lambda2_exact_p2(domain);
    }
    if (domain.n_dim() == 1) {
        kind = EstimateKind::Exact;
        const auto interval = Interval1D::make(domain.low(0), domain.high(0));
        return shoot_eigenvalue(interval, p, 2, std::min(tol, 1e-9)).lambda;
    }
    kind = EstimateKind::Upper;
    auto s = lambda2_upper_via_splitting(domain, p, eig1, axis);
    if (split) *split = s;
    return s.value;
}

InstanceResult solve_instance(const std::string& domain_name, double p, int grid,
                              const InstanceOptions& options) {
    const auto domain = make_named_domain(domain_name, grid);
    const auto params = ProblemParams::make(p, domain.n_dim());
    if (options.axis < 0 || options.axis >= domain.n_dim()) {
        throw InvalidParameter("split axis out of range for domain '" + domain_name + "'");
    }

    InstanceResult r;
    r.p = p;
    r.n_dim = domain.n_dim();
    r.domain = domain_name;
    r.grid = grid;
    r.eig1 = principal_eigenpair(domain, p, options.tol, options.max_iter);
    r.lambda2 = lambda2_for(domain, p, r.eig1, options.tol, options.axis, r.estimate_kind, &r.split);
    r.ratio = r.lambda2 / r.eig1.lambda;

    try {
        const auto rb = ratio_bound(params);
        r.bound_eq7 = rb.ratio_bound_eq7;
        r.bound_eq9 = rb.ratio_bound_eq9;
        r.best_bound = rb.best;
        r.satisfied = r.ratio <= rb.best * (1.0 + kRatioAllowance);
        r.inconclusive = !r.satisfied && r.estimate_kind == EstimateKind::Upper;
        r.falsified = !r.satisfied && r.estimate_kind == EstimateKind::Exact;
    } catch (const NoBoundAvailable&) {
        r.inconclusive = true;
    }
    return r;
}

AuditReport audit_instance(const InstanceResult& result) {
    auto report = full_audit(result.eig1, result.lambda2, result.p, result.estimate_kind,
                             kDiscretizationAllowance);
    report.instance.domain = result.domain;
    report.instance.grid = result.grid;
    return report;
}

std::vector<InstanceResult> run_sweep(const SweepConfig& config) {
    if (config.p_list.empty()) throw InvalidParameter("p-list is empty");
    if (config.domains.empty()) throw InvalidParameter("domain list is empty");

    struct Job {
        double p;
        int n;
        std::string domain;
    };
    std::vector<Job> jobs;
    for (double p : config.p_list) {
        for (const auto& name : config.domains) {
            const int n = make_named_domain(name, 1).n_dim();
            if (!config.n_list.empty() &&
                std::find(config.n_list.begin(), config.n_list.end(), n) == config.n_list.end()) {
                continue;
            }
            ProblemParams::make(p, n);
            jobs.push_back({p, n, name});
        }
    }
    std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
        return std::tie(a.p, a.n, a.domain) < std::tie(b.p, b.n, b.domain);
    });
    jobs.erase(std::unique(jobs.begin(), jobs.end(),
                           [](const Job& a, const Job& b) {
                               return a.p == b.p && a.n == b.n && a.domain == b.domain;
                           }),
               jobs.end());

    std::vector<std::optional<InstanceResult>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                results[i] = solve_instance(jobs[i].domain, jobs[i].p, config.grid, config.instance);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int workers = std::clamp(config.jobs, 1, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<InstanceResult> out;
    out.reserve(results.size());
    for (auto& r : results) out.push_back(std::move(*r));
    return out;
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

std::string optional_number(const std::optional<double>& x) {
    return x ? format_number(*x) : std::string();
}

const char* boolean(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string sweep_csv(const std::vector<InstanceResult>& rows) {
    std::string out = kSweepCsvHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += format_number(r.p) + ',' + std::to_string(r.n_dim) + ',' + r.domain + ',' +
               std::to_string(r.grid) + ',' + format_number(r.eig1.lambda) + ',' +
               format_number(r.lambda2) + ',' + std::string(to_string(r.estimate_kind)) + ',' +
               format_number(r.ratio) + ',' + optional_number(r.bound_eq7) + ',' +
               optional_number(r.bound_eq9) + ',' + optional_number(r.best_bound) + ',' +
               boolean(r.satisfied) + ',' + boolean(r.inconclusive) + '\n';
    }
    return out;
}

}  // namespace pgap
