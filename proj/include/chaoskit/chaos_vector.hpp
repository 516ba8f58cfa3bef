#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chaoskit/chaos_expansion.hpp"
#include "chaoskit/symmetric_tensor.hpp"

namespace chaoskit {

// A vector (I_{q_1}(f_1), ..., I_{q_d}(f_d)) of chaos components over a shared
// basis. Cross second moments: E[F_i F_j] = q! <f_i, f_j> when q_i = q_j, and
// 0 otherwise (orthogonality of chaoses of different orders).
struct ChaosVectorSpec {
    int dim;
    std::vector<std::pair<int, SymmetricTensor>> components;

    explicit ChaosVectorSpec(int dim_) : dim(dim_) {
        if (dim_ < 1) throw std::invalid_argument("ChaosVectorSpec: dim must be >= 1");
    }

    void add(int q, const SymmetricTensor& f) {
        if (f.dim() != dim) throw std::invalid_argument("ChaosVectorSpec: dim mismatch");
        if (f.order() != q) throw std::invalid_argument("ChaosVectorSpec: order mismatch");
        components.emplace_back(q, f);
    }

    std::size_t size() const { return components.size(); }
};

class CovarianceMatrix {
  public:
    explicit CovarianceMatrix(int d) : d_(d), a_(static_cast<std::size_t>(d) * d, 0.0) {
        if (d < 1) throw std::invalid_argument("CovarianceMatrix: d must be >= 1");
    }

    int size() const { return d_; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * d_ + j]; }
    void set(int i, int j, double v) {
        a_[static_cast<std::size_t>(i) * d_ + j] = v;
        a_[static_cast<std::size_t>(j) * d_ + i] = v;
    }

    static CovarianceMatrix identity(int d) {
        CovarianceMatrix s(d);
        for (int i = 0; i < d; ++i) s.set(i, i, 1.0);
        return s;
    }

  private:
    int d_;
    std::vector<double> a_;
};

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations. The matrices
// here are small (d <= 16), so sweeps until the off-diagonal mass is gone are
// cheap and unconditionally convergent.
inline std::vector<double> symmetric_eigenvalues(const CovarianceMatrix& s,
                                                 double tol = 1e-12) {
    const int d = s.size();
    std::vector<std::vector<double>> a(d, std::vector<double>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a[i][j] = s(i, j);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) off += a[i][j] * a[i][j];
        double diag = 0.0;
        for (int i = 0; i < d; ++i) diag = std::max(diag, std::abs(a[i][i]));
        if (off <= tol * tol * std::max(1.0, diag * diag)) break;

        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (int k = 0; k < d; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - sn * akq;
                    a[k][q] = sn * akp + c * akq;
                }
                for (int k = 0; k < d; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - sn * aqk;
                    a[q][k] = sn * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(d);
    for (int i = 0; i < d; ++i) ev[i] = a[i][i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

inline double operator_norm(const CovarianceMatrix& s) {
    const auto ev = symmetric_eigenvalues(s);
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

inline bool is_psd(const CovarianceMatrix& s, double tol = 1e-10) {
    const auto ev = symmetric_eigenvalues(s);
    return ev.front() >= -tol * std::max(1.0, std::abs(ev.back()));
}

// Canonical covariance matrix of a chaos vector.
inline CovarianceMatrix covariance_of(const ChaosVectorSpec& v) {
    const int d = static_cast<int>(v.size());
    CovarianceMatrix s(d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            const auto& [qi, fi] = v.components[i];
            const auto& [qj, fj] = v.components[j];
            s.set(i, j, qi == qj ? factorial(qi) * inner(fi, fj) : 0.0);
        }
    }
    return s;
}

// Lower-triangular Cholesky factor; throws if the matrix is not positive
// definite within tol.
inline std::vector<std::vector<double>> cholesky(const CovarianceMatrix& s,
                                                 double tol = 1e-12) {
    const int d = s.size();
    std::vector<std::vector<double>> l(d, std::vector<double>(d, 0.0));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = s(i, j);
            for (int k = 0; k < j; ++k) sum -= l[i][k] * l[j][k];
            if (i == j) {
                if (sum <= tol * std::max(1.0, s(i, i)))
                    throw std::runtime_error("cholesky: matrix not positive definite");
                l[i][j] = std::sqrt(sum);
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    return l;
}

}  // namespace chaoskit
