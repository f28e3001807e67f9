"""Show why the asymmetric-model coefficients need 1/zeta, not 1/zeta**2.

Compares both coefficient sets with the numerically exponentiated drift
matrix and reports the symplectic defect of each transfer matrix.
"""
import numpy as np

from tripartite_cv.models import (
    AsymmetricParams,
    asymmetric_coefficients,
    asymmetric_covariance,
    asymmetric_transfer_matrix,
)
from tripartite_cv.oracle import oracle_covariance, symplectic_defect


def main():
    print(f"{'zt':>5} {'variant':>13} {'symp. defect':>14} {'max |V - V_oracle|':>19} {'pure':>5}")
    for zt in (0.25, 0.5, 1.0, 1.5, 2.0):
        p = AsymmetricParams.from_zt(zt, 1.0, 0.6)
        oracle = oracle_covariance(p).entries
        for variant in ("exact", "zeta-squared"):
            c = asymmetric_coefficients(p, variant)
            cov = asymmetric_covariance(p, variant)
            diff = np.max(np.abs(cov.entries - oracle))
            print(f"{zt:5.2f} {variant:>13} {symplectic_defect(asymmetric_transfer_matrix(c)):14.3e} "
                  f"{diff:19.3e} {str(cov.is_pure()):>5}")


if __name__ == "__main__":
    main()
