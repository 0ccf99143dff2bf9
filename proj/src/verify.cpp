#include "fcg/verify.hpp"

#include <cmath>
#include <complex>
#include <cstdint>

#include "fcg/errors.hpp"

namespace fcg {

namespace {

// Entrywise |a - b| max with witness tracking. Both matrices must already
// have matching shapes.
VerificationReport compare_entrywise(std::string check, const ComplexMatrix& a,
                                     const ComplexMatrix& b, double tol) {
    VerificationReport report;
    report.check = std::move(check);
    std::uint64_t wi = 0;
    std::uint64_t wj = 0;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < a.rows(); ++i) {
        for (std::uint64_t j = 0; j < a.cols(); ++j) {
            const double d = std::abs(a(i, j) - b(i, j));
            if (d > worst) {
                worst = d;
                wi = i;
                wj = j;
            }
        }
    }
    report.max_deviation = worst;
    report.pass = worst <= tol;
    if (!report.pass) report.witness = {wi, wj};
    return report;
}

}  // namespace

VerificationReport check_unitary(const ComplexMatrix& g, double tol) {
    if (g.rows() != g.cols()) {
        throw ShapeError("check_unitary: matrix is " + std::to_string(g.rows()) + "x" +
                         std::to_string(g.cols()) + ", expected square");
    }
    VerificationReport report;
    report.check = "unitary";
    const std::uint64_t d = g.rows();
    std::uint64_t wi = 0;
    std::uint64_t wj = 0;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < d; ++i) {
        for (std::uint64_t j = 0; j < d; ++j) {
            Complex acc = 0.0;
            for (std::uint64_t k = 0; k < d; ++k) acc += std::conj(g(k, i)) * g(k, j);
            if (i == j) acc -= 1.0;
            const double dev = std::abs(acc);
            if (dev > worst) {
                worst = dev;
                wi = i;
                wj = j;
            }
        }
    }
    report.max_deviation = worst;
    report.pass = worst <= tol;
    if (!report.pass) report.witness = {wi, wj};
    return report;
}

VerificationReport check_fcg_equals_bcg_product(const FcgSpec& spec, double tol) {
    const std::uint64_t n_ctrl = std::uint64_t{1} << spec.table().width();
    const std::uint64_t dim = n_ctrl * spec.unitary().rows();
    if (dim > kMaxProductDim) {
        throw CapacityError("check_fcg_equals_bcg_product: dimension " + std::to_string(dim) +
                            " exceeds cap " + std::to_string(kMaxProductDim));
    }
    const ComplexMatrix direct = fcg_matrix(spec).dense();
    const auto marked = spec.table().marked_set();
    const ComplexMatrix product = bcg_product(spec.table().width(), marked, spec.unitary());
    return compare_entrywise("fcg_vs_bcg_product", direct, product, tol);
}

VerificationReport check_equivalence(const ComplexMatrix& a, const ComplexMatrix& b, double tol,
                                     bool up_to_global_phase) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("check_equivalence: shapes " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + " differ");
    }
    if (!up_to_global_phase) return compare_entrywise("equivalence", a, b, tol);

    // Pin the phase at a's largest-magnitude entry so a near-zero entry can
    // never blow up the ratio. If a is identically zero the entrywise
    // comparison already says everything.
    std::uint64_t pi = 0;
    std::uint64_t pj = 0;
    double best = 0.0;
    for (std::uint64_t i = 0; i < a.rows(); ++i) {
        for (std::uint64_t j = 0; j < a.cols(); ++j) {
            const double mag = std::abs(a(i, j));
            if (mag > best) {
                best = mag;
                pi = i;
                pj = j;
            }
        }
    }
    if (best == 0.0) return compare_entrywise("equivalence_up_to_phase", a, b, tol);
    const Complex ratio = b(pi, pj) / a(pi, pj);
    const double mag = std::abs(ratio);
    Complex phase = mag > 0.0 ? ratio / mag : Complex{1.0, 0.0};
    ComplexMatrix scaled(a.rows(), a.cols());
    for (std::uint64_t i = 0; i < a.rows(); ++i)
        for (std::uint64_t j = 0; j < a.cols(); ++j) scaled(i, j) = phase * a(i, j);
    return compare_entrywise("equivalence_up_to_phase", scaled, b, tol);
}

VerificationReport check_entry_formula(const FcgSpec& spec, double tol) {
    const std::uint64_t n_ctrl = std::uint64_t{1} << spec.table().width();
    const std::uint64_t m_dim = spec.unitary().rows();
    const std::uint64_t dim = n_ctrl * m_dim;
    if (dim > kMaxProductDim) {
        throw CapacityError("check_entry_formula: dimension " + std::to_string(dim) +
                            " exceeds cap " + std::to_string(kMaxProductDim));
    }
    const ComplexMatrix built = fcg_matrix(spec).dense();

    VerificationReport report;
    report.check = "entry_formula";
    std::uint64_t wi = 0;
    std::uint64_t wj = 0;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i) {
        const std::uint64_t y = i / m_dim;
        for (std::uint64_t j = 0; j < dim; ++j) {
            Complex expected = 0.0;
            // Off the diagonal band of blocks every entry is zero; on it the
            // formula is delta_ij + f(y) * (<i - yM| U |j - yM> - delta_ij).
            if (j >= y * m_dim && j < (y + 1) * m_dim) {
                const Complex delta = (i == j) ? 1.0 : 0.0;
                expected = delta;
                if (spec.table().value(y)) {
                    expected += spec.unitary()(i - y * m_dim, j - y * m_dim) - delta;
                }
            }
            const double dev = std::abs(built(i, j) - expected);
            if (dev > worst) {
                worst = dev;
                wi = i;
                wj = j;
            }
        }
    }
    report.max_deviation = worst;
    report.pass = worst <= tol;
    if (!report.pass) report.witness = {wi, wj};
    return report;
}

}  // namespace fcg
