#include "helpers.hpp"

#include "sketchkit/core/errors.hpp"
#include "sketchkit/core/linalg.hpp"
#include "sketchkit/core/log.hpp"
#include "sketchkit/core/stats.hpp"
#include "sketchkit/sketch/test_matrix.hpp"
#include "sketchkit/trace/estimators.hpp"
#include "sketchkit/trace/oracle.hpp"
#include "sketchkit/trace/tfim.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace sketchkit;
using namespace testutil;

namespace {

// Pauli assembly by explicit Kronecker products, site 1 most significant.
Matrix<double> tfim_kron(int ell, double h) {
    Matrix<double> I2 = Matrix<double>::Identity(2, 2), Z(2, 2), X(2, 2);
    Z << 1, 0, 0, -1;
    X << 0, 1, 1, 0;
    auto site_op = [&](const std::vector<std::pair<int, const Matrix<double>*>>& ops) {
        Matrix<double> out = Matrix<double>::Ones(1, 1);
        for (int s = 0; s < ell; ++s) {
            const Matrix<double>* f = &I2;
            for (auto& [site, m] : ops)
                if (site == s) f = m;
            Matrix<double> next(out.rows() * 2, out.cols() * 2);
            for (index_t i = 0; i < out.rows(); ++i)
                for (index_t j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * *f;
            out = next;
        }
        return out;
    };
    const index_t n = index_t(1) << ell;
    Matrix<double> H = Matrix<double>::Zero(n, n);
    for (int i = 0; i < ell; ++i) {
        H -= site_op({{i, &Z}, {(i + 1) % ell, &Z}});
        H -= h * site_op({{i, &X}});
    }
    return H;
}

Matrix<double> dense_expm_sym(const Matrix<double>& H, double beta, double shift) {
    const auto e = eigh(H);
    const RealVector ex = (-beta * (e.lambda.array() + shift)).exp();
    return e.U * ex.asDiagonal() * e.U.transpose();
}

}  // namespace

TEST(Tfim, TwoSitesNoField) {
    const Matrix<double> H = tfim_hamiltonian(2, 0).to_dense();
    Matrix<double> expect = Matrix<double>::Zero(4, 4);
    expect.diagonal() << -2, 2, 2, -2;
    EXPECT_EQ(H, expect);
}

TEST(Tfim, TwoSitesFieldStructure) {
    const Matrix<double> H = tfim_hamiltonian(2, 1).to_dense();
    EXPECT_EQ(H, Matrix<double>(H.transpose()));
    for (index_t i = 0; i < 4; ++i) {
        double off = 0;
        for (index_t j = 0; j < 4; ++j) {
            if (i == j) continue;
            off += std::abs(H(i, j));
            const auto flips = __builtin_popcountll(std::uint64_t(i ^ j));
            if (flips != 1) EXPECT_EQ(H(i, j), 0.0);
        }
        EXPECT_EQ(off, 2.0);
    }
}

TEST(Tfim, MatchesKroneckerAssembly) {
    for (int ell : {2, 3, 5}) {
        for (double h : {0.0, 0.7, 10.0}) {
            const Matrix<double> H = tfim_hamiltonian(ell, h).to_dense();
            const Matrix<double> K = tfim_kron(ell, h);
            EXPECT_LE((H - K).norm(), 1e-13) << ell << " " << h;
            EXPECT_LE((eigvalsh<double>(H) - eigvalsh<double>(K)).norm(), 1e-10);
        }
    }
    EXPECT_THROW(tfim_hamiltonian(1, 1), PreconditionError);
    EXPECT_THROW(tfim_hamiltonian(25, 1), PreconditionError);
}

TEST(Tfim, ShiftMakesPsd) {
    for (int ell : {3, 6}) {
        const double b = tfim_shift(ell, 2.5);
        EXPECT_EQ(b, 3.5 * ell);
        EXPECT_GE(eigvalsh<double>(tfim_hamiltonian(ell, 2.5).to_dense()).minCoeff() + b, -1e-10);
    }
}

TEST(Expm, Examples) {
    const auto Z = SparseMatrixCSR<double>::from_triplets(3, 3, {});
    const Matrix<double> V = random_matrix<double>(3, 2, 1);
    EXPECT_LE((expm_matvec<double>(Z, 1, 0, V) - V).norm(), 1e-15 * V.norm());

    Vector<double> dg(2);
    dg << 1, -1;
    const auto D = SparseMatrixCSR<double>::diagonal(dg);
    const Matrix<double> E = expm_matvec<double>(D, 1, 0, Matrix<double>::Identity(2, 2));
    EXPECT_NEAR(E(0, 0), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(E(1, 1), std::exp(1.0), 1e-14);
    EXPECT_EQ(E(0, 1), 0.0);
    EXPECT_THROW(expm_matvec<double>(D, 0, 0, V.topRows(2)), PreconditionError);
}

TEST(Expm, MatchesDenseOnTfim) {
    for (int ell : {6, 10}) {
        const auto H = tfim_hamiltonian(ell, 10);
        const double b = tfim_shift(ell, 10);
        const Matrix<double> ref = dense_expm_sym(H.to_dense(), 1.0, b);
        const Matrix<double> V = random_matrix<double>(H.rows(), 5, 2);
        const Matrix<double> got = expm_matvec<double>(H, 1.0, b, V);
        const Matrix<double> want = ref * V;
        EXPECT_LE((got - want).norm(), 1e-10 * want.norm()) << ell;
    }
}

TEST(Expm, ComplexProbes) {
    const auto H = tfim_hamiltonian(5, 1.5);
    const Matrix<cplx> V = random_matrix<cplx>(32, 3, 4);
    const Matrix<cplx> got = expm_matvec<cplx>(H, 2.0, 0, V);
    const Matrix<cplx> want = dense_expm_sym(H.to_dense(), 2.0, 0).cast<cplx>() * V;
    EXPECT_LE((got - want).norm(), 1e-10 * want.norm());
}

TEST(Expm, SymmetrizedCopyAgrees) {
    const auto H = tfim_hamiltonian(7, 3);
    const Matrix<double> Hd = H.to_dense();
    const auto Hs = SparseMatrixCSR<double>::from_dense((Hd + Hd.transpose()) / 2);
    const Matrix<double> V = random_matrix<double>(128, 4, 3);
    const Matrix<double> a = expm_matvec<double>(H, 0.5, tfim_shift(7, 3), V);
    const Matrix<double> b = expm_matvec<double>(Hs, 0.5, tfim_shift(7, 3), V);
    EXPECT_LE((a - b).norm(), 1e-12 * a.norm());
}

TEST(Oracle, CountsEveryColumn) {
    DenseOracle<double> A(random_matrix<double>(10, 10, 1));
    A.apply(random_matrix<double>(10, 3, 2));
    A.apply_adjoint(random_matrix<double>(10, 2, 3));
    EXPECT_EQ(A.matvecs(), 5);
    A.reset_count();
    EXPECT_EQ(A.matvecs(), 0);
}

TEST(Oracle, Linearity) {
    const Matrix<cplx> M = random_matrix<cplx>(12, 12, 1);
    SparseOracle<cplx> A(SparseMatrixCSR<cplx>::from_dense(M));
    for (std::uint64_t s = 0; s < 5; ++s) {
        const Matrix<cplx> x = random_matrix<cplx>(12, 1, 10 + s), y = random_matrix<cplx>(12, 1, 20 + s);
        const cplx a(0.3, -1.2);
        EXPECT_LE((A.apply(a * x + y) - a * A.apply(x) - A.apply(y)).norm(), 1e-10 * (x.norm() + y.norm()) * M.norm());
        EXPECT_LE((A.apply_adjoint(x) - M.adjoint() * x).norm(), 1e-12 * M.norm() * x.norm());
    }
}

TEST(GirardHutchinson, Examples) {
    const SketchSpec stack{Family::SparseStack, 4};
    DenseOracle<double> I(Matrix<double>::Identity(40, 40));
    EXPECT_NEAR(girard_hutchinson<double>(I, 12, factory_for<double>(stack), 3), 40.0, 1e-12);
    EXPECT_EQ(I.matvecs(), 12);
    DenseOracle<double> Z(Matrix<double>::Zero(10, 10));
    EXPECT_EQ(girard_hutchinson<double>(Z, 5, factory_for<double>(SketchSpec{}), 1), 0.0);
    EXPECT_THROW(girard_hutchinson<double>(Z, 0, factory_for<double>(SketchSpec{}), 1), PreconditionError);
}

TEST(GirardHutchinson, UnbiasedOnDiagonal) {
    Matrix<double> D = Matrix<double>::Zero(3, 3);
    D.diagonal() << 1, 2, 3;
    DenseOracle<double> A(D);
    const auto f = factory_for<double>(SketchSpec{});
    std::vector<double> est;
    for (std::uint64_t s = 0; s < 20000; ++s) est.push_back(girard_hutchinson<double>(A, 1, f, s));
    EXPECT_NEAR(mean(est), 6.0, 4 * std_error(est));
}

TYPED_TEST_SUITE_P(NaHutch);
template <class T>
class NaHutch : public ::testing::Test {};

TYPED_TEST_P(NaHutch, ExactOnLowRankAndBudget) {
    using T = TypeParam;
    const Matrix<T> G = random_matrix<T>(60, 2, 1);
    const Matrix<T> A = G * G.adjoint();
    const double tr = real_part<T>(A.trace());
    for (const auto& spec : {SketchSpec{}, SketchSpec{Family::SparseStack, 2}}) {
        DenseOracle<T> op(A);
        const T est = na_hutch_pp<T>(op, 12, factory_for<T>(spec), 4);
        EXPECT_LE(std::abs(est - T(tr)), 1e-8 * tr);
        EXPECT_EQ(op.matvecs(), 12);
    }
    DenseOracle<T> zero(Matrix<T>::Zero(20, 20));
    EXPECT_EQ(std::abs(na_hutch_pp<T>(zero, 12, factory_for<T>(SketchSpec{}), 1)), 0.0);
}
REGISTER_TYPED_TEST_SUITE_P(NaHutch, ExactOnLowRankAndBudget);
using Fields = ::testing::Types<double, cplx>;
INSTANTIATE_TYPED_TEST_SUITE_P(BothFields, NaHutch, Fields);

TEST(NaHutch, IndivisibleBudgetWarnsAndSpendsT) {
    std::vector<std::string> msgs;
    auto old = set_warning_sink([&](const std::string& m) { msgs.push_back(m); });
    DenseOracle<double> A(random_psd<double>(30, 30, 2));
    na_hutch_pp<double>(A, 14, factory_for<double>(SketchSpec{}), 1);
    set_warning_sink(old);
    EXPECT_EQ(A.matvecs(), 14);
    EXPECT_EQ(msgs.size(), 1u);
}

TEST(NaHutch, BeatsGirardHutchinsonOnFastDecay) {
    const index_t n = 256, t = 48;
    Matrix<double> D = Matrix<double>::Zero(n, n);
    for (index_t i = 0; i < n; ++i) D(i, i) = std::ldexp(1.0, -int(i));
    const double tr = D.trace();
    DenseOracle<double> A(D);
    const auto f = factory_for<double>(SketchSpec{});
    std::vector<double> gh, nh;
    for (std::uint64_t s = 0; s < 100; ++s) {
        gh.push_back(std::abs(girard_hutchinson<double>(A, t, f, s) - tr) / tr);
        nh.push_back(std::abs(na_hutch_pp<double>(A, t, f, s) - tr) / tr);
    }
    EXPECT_LE(10 * median(nh), median(gh));
}

TEST(NaHutch, UnbiasedOnSmallFixture) {
    const Matrix<double> A = random_psd<double>(16, 16, 7);
    DenseOracle<double> op(A);
    const auto f = factory_for<double>(SketchSpec{Family::KhatriRao, 4, 0, -1, int(EntryDist::RealRademacher), 2});
    std::vector<double> est;
    for (std::uint64_t s = 0; s < 20000; ++s) est.push_back(na_hutch_pp<double>(op, 6, f, s));
    EXPECT_NEAR(mean(est), A.trace(), 4 * std_error(est));
}

TEST(Partition, TwoSiteAnalytic) {
    // Spectrum of the two-site chain by hand: {2, -2, +-2 sqrt(1 + h^2)}.
    const double h = 0.8, beta = 1.3;
    const double b = tfim_shift(2, h), w = 2 * std::sqrt(1 + h * h);
    double z = 0;
    for (double lam : {2.0, -2.0, w, -w}) z += std::exp(-beta * (lam + b));
    EXPECT_NEAR(tfim_shifted_trace(2, h, beta), z, 1e-12 * z);
    RealVector expect(4);
    expect << -w, -2, 2, w;
    EXPECT_LE((eigvalsh<double>(tfim_hamiltonian(2, h).to_dense()) - expect).norm(), 1e-12);
}

TEST(Partition, InvalidBudgetRows) {
    PartitionConfig cfg;
    cfg.ell = 4;
    cfg.h = 1;
    cfg.beta = 1;
    cfg.t_grid = {0, 12};
    cfg.trials = 2;
    const CsvTable t = partition_function_experiment(cfg);
    EXPECT_EQ(t.schema, partition_schema());
    ASSERT_EQ(t.rows.size(), 8u);
    for (const auto& row : t.rows) {
        const auto tval = std::get<std::int64_t>(row[5]);
        const double est = std::get<double>(row[7]);
        const auto mv = std::get<std::int64_t>(row[10]);
        if (tval == 0) {
            EXPECT_TRUE(std::isnan(est));
            EXPECT_EQ(mv, 0);
        } else {
            EXPECT_TRUE(std::isfinite(est));
            EXPECT_EQ(mv, 12);
        }
    }
}

TEST(Partition, ModesAgree) {
    PartitionConfig cfg;
    cfg.ell = 5;
    cfg.h = 2;
    cfg.beta = 0.5;
    cfg.t_grid = {12};
    cfg.trials = 3;
    cfg.mode = OperatorMode::Implicit;
    const auto a = partition_function_experiment(cfg);
    cfg.mode = OperatorMode::Materialized;
    const auto b = partition_function_experiment(cfg);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const double x = std::get<double>(a.rows[i][7]), y = std::get<double>(b.rows[i][7]);
        EXPECT_NEAR(x, y, 1e-9 * std::abs(x));
    }
}

TEST(Partition, Validation) {
    PartitionConfig cfg;
    cfg.ell = 15;
    EXPECT_THROW(partition_function_experiment(cfg), PreconditionError);
    cfg.ell = 4;
    cfg.estimators = {"xnystrace"};
    EXPECT_THROW(partition_function_experiment(cfg), ConfigError);
    EXPECT_THROW(parse_operator_mode("lazy"), ConfigError);
}
