#pragma once

#include <array>

#include "sqz/core.hpp"

// Left/right multiplication on 2x2 matrices realized as 4x4 matrices on the
// vectorized density matrix.
//
// Vectorization order is (rho_{++}, rho_{--}, rho_{+-}, rho_{-+}): populations
// first, then coherences. In this order every rate operator of the two-level
// master equation is block diagonal (population block (+) coherence block).
//
// Naming follows the physics convention: the "r" representation sigma^r acts on
// the ket, i.e. sigma^r_A rho = A rho (lift_left), and the "l" representation
// acts on the bra, sigma^l_A rho = rho A (lift_right). sigma^l is therefore
// anti-isomorphic to su(2).

namespace sqz {

template <class Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
template <class Scalar>
using Mat4 = Eigen::Matrix<Scalar, 4, 4>;

/// (row, col) of the 2x2 matrix element stored at vectorized index k.
inline constexpr std::array<std::array<int, 2>, 4> kVecIndex{{{0, 0}, {1, 1}, {0, 1}, {1, 0}}};

/// Labels (s, s') of the basis element |s><s'| at vectorized index k.
inline constexpr std::array<std::array<int, 2>, 4> kBasisLabels{{{1, 1}, {-1, -1}, {1, -1}, {-1, 1}}};

/// Vectorized index of |s><s'|, s, s' in {+1, -1}.
constexpr int vec_index(int s, int s_prime) {
    if (s == s_prime) return s == 1 ? 0 : 1;
    return s == 1 ? 2 : 3;
}

template <class Scalar>
Eigen::Matrix<Scalar, 4, 1> vectorize(const Mat2<Scalar>& m) {
    Eigen::Matrix<Scalar, 4, 1> v;
    for (int k = 0; k < 4; ++k) v(k) = m(kVecIndex[k][0], kVecIndex[k][1]);
    return v;
}

template <class Scalar>
Mat2<Scalar> unvectorize(const Eigen::Matrix<Scalar, 4, 1>& v) {
    Mat2<Scalar> m;
    for (int k = 0; k < 4; ++k) m(kVecIndex[k][0], kVecIndex[k][1]) = v(k);
    return m;
}

/// Basis matrix |s><s'| for vectorized index k.
template <class Scalar>
Mat2<Scalar> basis_matrix(int k) {
    Mat2<Scalar> m = Mat2<Scalar>::Zero();
    m(kVecIndex[k][0], kVecIndex[k][1]) = Scalar(1);
    return m;
}

/// Matrix of rho -> A rho.
template <class Scalar>
Mat4<Scalar> lift_left(const Mat2<Scalar>& a) {
    Mat4<Scalar> out;
    for (int k = 0; k < 4; ++k) out.col(k) = vectorize<Scalar>(a * basis_matrix<Scalar>(k));
    return out;
}

/// Matrix of rho -> rho A. Note lift_right(A) lift_right(B) = lift_right(B A).
template <class Scalar>
Mat4<Scalar> lift_right(const Mat2<Scalar>& a) {
    Mat4<Scalar> out;
    for (int k = 0; k < 4; ++k) out.col(k) = vectorize<Scalar>(basis_matrix<Scalar>(k) * a);
    return out;
}

/// Vectorized density matrix: coefficients lambda_{s,s'} in the |s><s'| basis.
struct VectorizedState {
    Vec4 coeffs = Vec4::Zero();

    static VectorizedState from_matrix(const DensityMatrix& rho) { return {vectorize<Complex>(rho)}; }
    DensityMatrix matrix() const { return unvectorize<Complex>(coeffs); }

    Complex lambda(int s, int s_prime) const { return coeffs(vec_index(s, s_prime)); }
    Complex trace() const { return coeffs(0) + coeffs(1); }
};

namespace pauli {

/// sigma_z |+-1> = +-|+-1>, sigma_+ = |+1><-1|, sigma_- = |-1><+1|.
Mat2<int> sigma_z();
Mat2<int> sigma_plus();
Mat2<int> sigma_minus();
Operator2 x();
Operator2 y();
Operator2 z();

} // namespace pauli

/// Composite su(2)_J (+) su(2)_K generators on the vectorized space.
/// J0 = (sz^r + sz^l)/2, J+ = s+^r s-^l, J- = s-^r s+^l,
/// K0 = (sz^r - sz^l)/2, K+ = s+^r s+^l, K- = s-^r s-^l.
struct GeneratorSet {
    Mat4<int> j0, j_plus, j_minus;
    Mat4<int> k0, k_plus, k_minus;
};

const GeneratorSet& composite_generators();

template <class Scalar>
Mat4<Scalar> commutator(const Mat4<Scalar>& a, const Mat4<Scalar>& b) {
    return a * b - b * a;
}

} // namespace sqz
