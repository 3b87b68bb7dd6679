#ifndef IAFEAS_RATIONAL_HPP
#define IAFEAS_RATIONAL_HPP

#include <gmpxx.h>

#include <complex>
#include <vector>

namespace iafeas {

/// Complex number with rational real and imaginary parts sharing one
/// denominator: (real_num + i * imag_num) / denom.
struct GaussianRational {
    mpz_class real_num = 0;
    mpz_class imag_num = 0;
    mpz_class denom = 1; // >= 1

    bool is_zero() const { return real_num == 0 && imag_num == 0; }

    std::complex<double> to_complex() const {
        const double d = denom.get_d();
        return {real_num.get_d() / d, imag_num.get_d() / d};
    }

    friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

/// Dense matrix of Gaussian rationals, row-major. Deliberately minimal: the
/// exact test only ever builds, reads and rank-reduces these.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    GaussianRational& operator()(int i, int j) {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }
    const GaussianRational& operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<GaussianRational> entries_;
};

} // namespace iafeas

#endif
