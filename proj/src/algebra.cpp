#include "sqz/algebra.hpp"

namespace sqz {

namespace pauli {

Mat2<int> sigma_z() { return (Mat2<int>() << 1, 0, 0, -1).finished(); }
Mat2<int> sigma_plus() { return (Mat2<int>() << 0, 1, 0, 0).finished(); }
Mat2<int> sigma_minus() { return (Mat2<int>() << 0, 0, 1, 0).finished(); }

Operator2 x() { return (Operator2() << 0, 1, 1, 0).finished(); }
Operator2 y() { return (Operator2() << 0, Complex(0, -1), Complex(0, 1), 0).finished(); }
Operator2 z() { return (Operator2() << 1, 0, 0, -1).finished(); }

} // namespace pauli

namespace {

GeneratorSet build_generators() {
    const Mat4<int> sz_r = lift_left<int>(pauli::sigma_z());
    const Mat4<int> sp_r = lift_left<int>(pauli::sigma_plus());
    const Mat4<int> sm_r = lift_left<int>(pauli::sigma_minus());
    const Mat4<int> sz_l = lift_right<int>(pauli::sigma_z());
    const Mat4<int> sp_l = lift_right<int>(pauli::sigma_plus());
    const Mat4<int> sm_l = lift_right<int>(pauli::sigma_minus());

    GeneratorSet g;
    // (s +- s')/2 on |s><s'| is always an integer.
    g.j0 = (sz_r + sz_l) / 2;
    g.j_plus = sp_r * sm_l;
    g.j_minus = sm_r * sp_l;
    g.k0 = (sz_r - sz_l) / 2;
    g.k_plus = sp_r * sp_l;
    g.k_minus = sm_r * sm_l;
    return g;
}

} // namespace

const GeneratorSet& composite_generators() {
    static const GeneratorSet generators = build_generators();
    return generators;
}

} // namespace sqz
