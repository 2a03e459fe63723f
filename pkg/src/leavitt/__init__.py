"""Leavitt path algebras, Anick type automorphisms and the simple modules S^f_c."""

from .algebra import Element, LeavittPathAlgebra, Monomial, format_element, graded_parts, involution, multiply
from .errors import (GraphError, LeavittError, MathDomainError, ParseError, RelationError,
                     SessionMismatch)
from .graph import Graph, Path, RationalInfinitePath, parse_graph, rose
from .modules import (ChenModule, SfcElement, SfcSpec, TwistedModule, format_sfc, sfc_act,
                      sfc_act_twisted, sfc_annihilates, sfc_endo, sfc_equiv, sfc_to_chen,
                      sfc_to_chen_compat_check, sfc_witness)
from .morphisms import (AlgMatrix, GenMap, apply_hom, build_anick, build_phi_pq,
                        check_relations, compose_homs, iso_condition, validate_pq)
from .parsing import parse_element, parse_genmap, parse_module_element, parse_path
from .scalars import Field, IrrPoly, Poly, Residue, is_irreducible, parse_poly

__all__ = [name for name in dir() if not name.startswith("_")]
