#include "swapdist/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swapdist {

double SymmetricMatrix::inf_norm() const {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(at(i, j));
        best = std::max(best, row);
    }
    return best;
}

SymmetricMatrix build_shifted(int n, bool allow_large) {
    if (n < 1 || n > 7)
        throw std::invalid_argument("build_shifted: n must be in 1..7");
    if (n == 7 && !allow_large)
        throw std::invalid_argument(
            "build_shifted: n = 7 is a 5040 x 5040 dense matrix; pass allow_large to proceed");
    const auto g = Permutohedron::build(n, Permutohedron::DistanceStorage::full);
    const std::size_t N = g.vertex_count();
    const double shift = g.diameter() / 2.0;

    SymmetricMatrix m;
    m.n = N;
    m.a.resize(N * N);
    for (std::size_t i = 0; i < N; ++i) {
        const auto row = g.distances_from(static_cast<VertexId>(i));
        for (std::size_t j = 0; j < N; ++j) m.a[i * N + j] = row[j] - shift;
    }
    return m;
}

namespace {

double offdiag_fro(const SymmetricMatrix& m) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = i + 1; j < m.n; ++j) acc += m.at(i, j) * m.at(i, j);
    return std::sqrt(2.0 * acc);
}

double full_fro(const SymmetricMatrix& m) {
    double acc = 0.0;
    for (double v : m.a) acc += v * v;
    return std::sqrt(acc);
}

}  // namespace

std::vector<double> symmetric_eigenvalues(SymmetricMatrix m, double tol_factor,
                                          int max_sweeps) {
    const std::size_t N = m.n;
    if (N == 0) return {};
    if (m.a.size() != N * N)
        throw std::invalid_argument("symmetric_eigenvalues: bad matrix shape");
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j)
            if (m.at(i, j) != m.at(j, i))
                throw std::invalid_argument("symmetric_eigenvalues: matrix is not symmetric");

    const double fro0 = full_fro(m);
    const double target = tol_factor * fro0;
    double* a = m.a.data();

    auto extract = [&]() {
        std::vector<double> eigs(N);
        for (std::size_t i = 0; i < N; ++i) eigs[i] = a[i * N + i];
        std::sort(eigs.begin(), eigs.end());
        return eigs;
    };
    if (fro0 == 0.0) return extract();

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (offdiag_fro(m) <= target) return extract();
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double apq = a[p * N + q];
                if (apq == 0.0) continue;
                const double app = a[p * N + p];
                const double aqq = a[q * N + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < N; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a[k * N + p];
                    const double akq = a[k * N + q];
                    a[k * N + p] = a[p * N + k] = c * akp - s * akq;
                    a[k * N + q] = a[q * N + k] = s * akp + c * akq;
                }
                a[p * N + p] = app - t * apq;
                a[q * N + q] = aqq + t * apq;
                a[p * N + q] = a[q * N + p] = 0.0;
            }
        }
    }
    if (offdiag_fro(m) <= target) return extract();
    throw std::runtime_error("symmetric_eigenvalues: Jacobi sweeps did not converge");
}

bool check_negative_semidefinite(const SymmetricMatrix& m, double tol) {
    if (tol < 0.0) tol = 1e-9 * m.inf_norm();
    const auto eigs = symmetric_eigenvalues(m);
    return eigs.empty() || eigs.back() <= tol;
}

std::vector<EigenvalueGroup> group_eigenvalues(const std::vector<double>& eigs, double tol) {
    std::vector<EigenvalueGroup> groups;
    if (eigs.empty()) return groups;
    if (!std::is_sorted(eigs.begin(), eigs.end()))
        throw std::invalid_argument("group_eigenvalues: input must be sorted ascending");
    double sum = eigs[0];
    std::size_t count = 1;
    for (std::size_t i = 1; i <= eigs.size(); ++i) {
        if (i < eigs.size() && eigs[i] - eigs[i - 1] <= tol) {
            sum += eigs[i];
            ++count;
        } else {
            groups.push_back({sum / static_cast<double>(count), count});
            if (i < eigs.size()) {
                sum = eigs[i];
                count = 1;
            }
        }
    }
    return groups;
}

}  // namespace swapdist
