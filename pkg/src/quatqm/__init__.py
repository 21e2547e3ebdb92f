"""Closed-form solutions of the left-``i`` quaternionic Schroedinger equation and their numerical checks."""
from .quaternion import (I, J, K, ONE, Quaternion, UnitQuaternionK, build_K, cexp, conj, inverse,
                         lmul_i, mul, norm, rmul_i)
from .time_evolution import (LambdaFamily, LambdaKind, SeparationConstant, default_dt, eval_lambda,
                             kappa_of, schematic_prefactor, verify_separation)
from .stationary import (ConstraintViolation, FamilyTag, LambdaFields, PlaneWave, RhoBranch,
                         SeparationDiagnostics, StaticPhaseVerdict, StationaryFamily, analytic_current,
                         build_family, build_phi, check_static_phase, energy_of, family_diagnostics,
                         family_kappa, matching_lambda, random_family, random_frame, separation_diagnostics)
from .field import (CurrentField, Grid, GridTooSmallError, PoisonedSampleError, QuaternionField,
                    apply_hamiltonian, convergence_study, divergence, gradient, grid_for, laplacian,
                    probability_current, tise_residual_field,
                    residual_tdse, residual_tise, sample, write_current_csv, write_field_csv)
from .scattering import (DegenerateAmplitudeError, EvanescentError, PartialWave, ScatteringError,
                         ScatteringSolution, StepProblem, UndefinedRatioError, check_continuity,
                         energy_relations, flux_balance, region_residuals, solve_step, sweep,
                         write_sweep_csv)

__version__ = "0.1.0"
