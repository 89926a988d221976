#include "sketchkit/core/lowrank.hpp"

#include "sketchkit/core/errors.hpp"

#include <cmath>

namespace sketchkit {

namespace {

template <Scalar T>
void check_orthonormal(const Matrix<T>& U, const char* name) {
    const index_t k = U.cols();
    const double err = (U.adjoint() * U - Matrix<T>::Identity(k, k)).norm();
    if (err > 1e-10 * std::sqrt(double(std::max<index_t>(k, 1))))
        throw NumericalError(std::string(name) + " is not orthonormal");
}

}  // namespace

template <Scalar T>
void validate(const LowRankFactorization<T>& f) {
    if (const auto* s = std::get_if<SvdFactors<T>>(&f)) {
        check_orthonormal(s->U, "U");
        check_orthonormal(s->V, "V");
        for (index_t i = 0; i < s->sigma.size(); ++i) {
            if (s->sigma(i) < 0) throw NumericalError("negative singular value");
            if (i > 0 && s->sigma(i) > s->sigma(i - 1)) throw NumericalError("singular values not sorted");
        }
    } else if (const auto* e = std::get_if<EigFactors<T>>(&f)) {
        check_orthonormal(e->U, "U");
        for (index_t i = 0; i < e->lambda.size(); ++i)
            if (e->lambda(i) < 0) throw NumericalError("negative eigenvalue");
    } else {
        const auto& o = std::get<OuterProduct<T>>(f);
        if (o.F.cols() != o.G.cols()) throw DimensionError("outer-product factors have different ranks");
    }
}

template void validate(const LowRankFactorization<double>&);
template void validate(const LowRankFactorization<cplx>&);

}  // namespace sketchkit
