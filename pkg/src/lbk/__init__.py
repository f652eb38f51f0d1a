"""Brunnian links, n-triviality certificates, framed twists and string links."""
from .certify import (TrivialityCertificate, VerificationReport, find_trivializing_self_set, parse_certificate,
                      thm1_certificate, thm2_certificate, thmG_certificate, verify_certificate)
from .diagram import (ComponentSelector, Crossing, LinkDiagram, crossing_change, delete_components, mirror,
                      parse_pd, serialize)
from .invariants import conway, jones, kauffman_bracket, linking_matrix, v2, v3
from .polynomial import LaurentPolynomial
from .simplify import Budget, TrivialityVerdict, layered_split, simplify, triviality
from .stringlink import (BraidWord, braid_to_stringlink, closure, insert_stringlink, is_brunnian_stringlink,
                         pure_braid_commutator)
from .twist import TwistSite, apply_twist, detect_twist_site

__version__ = "0.1.0"

__all__ = [
    "Budget", "BraidWord", "ComponentSelector", "Crossing", "LaurentPolynomial", "LinkDiagram",
    "TrivialityCertificate", "TrivialityVerdict", "TwistSite", "VerificationReport", "apply_twist",
    "braid_to_stringlink", "closure", "conway", "crossing_change", "delete_components", "detect_twist_site",
    "find_trivializing_self_set", "insert_stringlink", "is_brunnian_stringlink", "jones", "kauffman_bracket",
    "layered_split", "linking_matrix", "mirror", "parse_certificate", "parse_pd", "pure_braid_commutator",
    "serialize", "simplify", "thm1_certificate", "thm2_certificate", "thmG_certificate", "triviality", "v2",
    "v3", "verify_certificate",
]
