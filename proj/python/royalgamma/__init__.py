"""Royal-node Gamma-inner function construction (Python bindings)."""

from ._core import (
    BlaschkeData,
    GammaInnerFn,
    Parametrization,
    RoyalError,
    S0P0Candidate,
    S0P0Solution,
    Tolerance,
    build_parametrization,
    check_positive_definite,
    choose_tau,
    classify_point,
    construct_h,
    extract_royal_data,
    generate_h_nu,
    phasar_derivative,
    phi_omega,
    pick_matrix,
    poly_roots,
    royal_nodes,
    solve_blaschke,
    solve_s0_p0,
    verify_royal_solution,
)


def solve(data, omega_grid=256, tol=None):
    """Run the full pipeline and return [(candidate, h, report), ...]."""
    tol = tol or Tolerance()
    param = build_parametrization(data, tol=tol)
    sol = solve_s0_p0(param, data, tol)
    out = []
    for cand in sol.members(omega_grid):
        try:
            h = construct_h(param, cand.s0, cand.p0, tol)
        except RoyalError:
            continue
        out.append((cand, h, verify_royal_solution(h, data, tol)))
    return out


__all__ = [name for name in dir() if not name.startswith("_")]
