#pragma once

#include "supchan/vacuum.hpp"

namespace supchan {

// Reference construction of two-path routing, carried out explicitly on the
// two-rail mode space.  Each rail holds the message levels plus a vacuum
// level, the control marks which rail is occupied, and each arm's extended
// operators act locally on their rail.  Direct but heavy; used to cross-check
// the compact router.
inline ComplexMatrix mode_picture_superpose(const VacuumExtension& ext1,
                                            const VacuumExtension& ext2,
                                            const ComplexMatrix& omega, const ComplexMatrix& rho) {
    const int d = ext1.channel().dim_in();
    if (ext1.channel().dim_out() != d || ext2.channel().dim_in() != d ||
        ext2.channel().dim_out() != d)
        throw DimensionMismatch("mode_picture_superpose: arms must be square and match");
    if (rho.rows() != d || rho.cols() != d || omega.rows() != 2 || omega.cols() != 2)
        throw DimensionMismatch("mode_picture_superpose: state dimension mismatch");

    const int rail = d + 1;
    const int vac = d;
    const int full = rail * rail;

    // Isometry from message (x) control into the two-rail space: control 0
    // puts the message on rail 1, control 1 puts it on rail 2.
    ComplexMatrix u(full, 2 * d);
    for (int m = 0; m < d; ++m) {
        u(m * rail + vac, m * 2 + 0) = 1.0;
        u(vac * rail + m, m * 2 + 1) = 1.0;
    }

    ComplexMatrix lifted = u * kron(rho, omega) * u.dagger();
    ComplexMatrix sigma(full, full);
    for (size_t i = 0; i < ext1.channel().kraus().size(); ++i)
        for (size_t j = 0; j < ext2.channel().kraus().size(); ++j) {
            ComplexMatrix k = kron(ext1.extended_kraus(i), ext2.extended_kraus(j));
            sigma += k * lifted * k.dagger();
        }
    return u.dagger() * sigma * u;
}

}  // namespace supchan
