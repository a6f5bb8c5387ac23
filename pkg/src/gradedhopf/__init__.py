"""Exact computations with graded Lie superalgebras, their enveloping Hopf
algebras, BCH series, Harish-Chandra pairs and action Hopf algebroids."""

from .core import Fraction, InputError
from .lie import (LieAlgebra, LieVector, check_jacobi, sl2_graded, heisenberg_graded, heisenberg_odd,
                  shift_tangent, pi_tangent, gl, abelian)
from .poly import PolyRing, Series, Var
from .ue import (UElement, SymElement, Tensor, pbw_normalize, u_coproduct, u_counit, u_antipode, psi,
                 psi_inverse, admissible_count, pbw_rank_oracle)
from .bch import dynkin_bch, bch_oracle, FormalGroupLaw, formal_group_coproduct
from .hc import HCPair, HCFunctional, make_formal_group, hc_check, super_subalgebra_reduce
from .algebroid import (LieRinehartPair, UREElement, ure_normalize, lr_coproduct, lr_epsilon, coincidence_check,
                        action_hopf_maps, JetElement, jet_pairing, jet_antipode, FormalActionGroupoid,
                        groupoid_jet_projection, ActionHCStructure)
from .verify import run_axiom_suite, ue_dossier, Report
from .expr import parse, parse_and_eval, ParseError

__version__ = "0.1.0"
