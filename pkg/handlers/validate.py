"""
`sim validate`: check a case file and print its closed-form targets
"""

import math
import logging
from argparse import Namespace

from harness.case_store import SimCase
from middleware.guards import EXIT_FAILURE, EXIT_OK, handle_errors, require_case
from sim.dynamics import mass_geometry_at
from sim.force_model import equilibrium_forces, linear_solve_equilibrium, residual, singularity_margin

logger = logging.getLogger(__name__)

SELF_CHECK_TOL = 1e-9  # N


@handle_errors
@require_case
async def validate_command(args: Namespace, case: SimCase) -> int:
    """Handle `sim validate <case.json>`"""
    pose = case.pose()
    mg = mass_geometry_at(pose, case.params)
    sol = equilibrium_forces(pose, mg)
    T_lin, f_lin = linear_solve_equilibrium(pose.beta0, pose.phi0, mg.G_t)
    worst = max(abs(r) for r in residual(pose, mg, sol))

    print(f"{case.name}: valid")
    print(f"  beta={case.beta_deg:g} deg  phi_d={case.phi_d_deg:g} deg  "
          f"alpha_d={math.degrees(pose.alpha_signed):g} deg")
    print(f"  G_t={mg.G_t:.4f} N  l_E={mg.l_E:.4f} m  l_GE={mg.l_GE:.4f} m")
    print(f"  f_E_d={sol.f_E:.4f} N  f_E_Z={sol.f_E_Z:.4f} N  T_sum_d={sol.T_sum:.4f} N  "
          f"tau_sum_X={sol.tau_sum_X:.5f} N*m")
    print(f"  singularity margin {math.degrees(singularity_margin(pose)):.2f} deg, "
          f"max residual {worst:.2e}")

    per_rotor = sol.T_sum / 4.0
    if per_rotor > case.params.T_i_max:
        logger.warning(f"{case.name}: equilibrium needs {per_rotor:.3f} N per rotor, "
                       f"above T_i_max={case.params.T_i_max:.3f} N; expect saturation")

    if abs(T_lin - sol.T_sum) > SELF_CHECK_TOL or abs(f_lin - sol.f_E) > SELF_CHECK_TOL:
        logger.error(f"{case.name}: closed form and linear solve disagree "
                     f"(T_sum {sol.T_sum:.12f} vs {T_lin:.12f}, f_E {sol.f_E:.12f} vs {f_lin:.12f})")
        return EXIT_FAILURE
    return EXIT_OK
