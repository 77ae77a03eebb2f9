"""Exact finite-precision computations for the modified mod p local Langlands
correspondence for GL_2 in the explicit q = +-1 mod p cases."""

__version__ = "0.1.0"

from .errors import (GL2Error, Indistinguishable, InsufficientEvidence,
                     InsufficientPrecision, InvalidInput, PrecisionError,
                     UnsupportedCase)
from .field import FFElem, FiniteFieldCtx
from .dvr import DVRElem, FracElem, make_dvr
from .characters import (AbelianGroupModel, ResidualCharacter, ResidualHom,
                         UnitCharacter, character_from_digits, congruence_level,
                         hom_space_dim, make_unit_character, norm_character,
                         sigma_class, standard_model, trivial_character)
from .lattices import (LatticeBasis, diagonal_module, enumerate_stable_lattices,
                       lattice, reduction_extension_direct,
                       sigma_from_lattice_proof_formula, verify_prop_class)
from .ext import (TZLine, TorusHom, phi, restrict_to_TZ, t_side_class,
                  unramified_line)
from .correspondence import (LocalParams, QMinus1Case, ResidualGaloisRep,
                             SearchParams, SmoothRepDescription, Variant, WKind,
                             brute_force_correspond, correspond, enumerate_lifts,
                             jh_constituents, lift_reduction, local_params,
                             one_plus_omega, twist_galois, twist_rep)
from .report import VerificationReport
