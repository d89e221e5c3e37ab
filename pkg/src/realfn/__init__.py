"""Deciding reality of rational functions on the Riemann sphere.

A rational map ``f`` is equivalent to a real one for an antiholomorphic
involution ``tau`` when some Möbius ``g`` makes ``g o f`` commute with
``tau``. The library decides this two ways, from the ramification divisor
and by constructing ``g``, and cross-checks the answers.
"""

from .divisor import (Divisor, StabilityWitness, critical_values, is_tau_stable,
                      preimage_divisor, sigma_divisor, sigma_form_exact)
from .errors import (ConsistencyError, InvalidConstellation, InvalidInput,
                     Intransitive, ModeError, NonIdentityProduct, NumericalFailure,
                     RealfnError)
from .geometry import (J, Involution, Mobius, apply_involution, apply_mobius,
                       apply_to_map, mobius_from_three_pairs)
from .maps import RationalMap, wronskian
from .monodromy import (BlockSystem, Constellation, Passport, block_closure, genus,
                        passport_stability, quotient_constellation, validate)
from .numkernel import (DEFAULT_TOL, BinaryForm, GaussianRational, Mode, SpherePoint,
                        chordal_distance, roots_with_multiplicities)
from .reality import (Verdict, VerdictKind, conj_transport, descent_solve,
                      divisor_criterion, mobius_factor, reality_test, verify_verdict)

__version__ = "0.1.0"
