"""Computational cell decompositions for totally nonnegative symmetric spaces.

The package makes the total-positivity structure of the tau-fixed parts of a
pinned reductive group executable: twisted-involution combinatorics, exact
matrix models, cell parametrizations, the braid-move transition maps with
their square-root closed forms, and the induced tropical zone maps.
"""

from .cartan import CartanDatum, datum, product_datum
from .weyl import WeylElement, demazure_product, star, weyl_group, weyl_multiply
from .involutions import (InvolutionWord, JointWord, TwistedInvolution,
                          cell_index_action, involution_words, joint_words,
                          pair_index_action, phi, twisted_involutions)
from .models import (GroupElement, PinnedModel, gauss_decompose, get_model,
                     model_catalog, model_for_datum)
from .cells import (CellPoint, alpha_inverse, classify_cell, conjugation_step,
                    factor_unipotent_A, kappa, kappa_joint, kappa_minus,
                    psi_minus, psi_plus)
from .moves import MoveKind, check_conservation, get_move, triangular_degree_check
from .braid import BraidGraph, TransitionMap, braid_graph, compose_transition, transition_map
from .semifields import semifield
from .puiseux import PuiseuxScalar, valuation
from .zones import (usemifield_element, usemifield_multiply,
                    utau_tropical_membership, zone_action, zone_map)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
