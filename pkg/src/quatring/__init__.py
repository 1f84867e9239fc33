"""Quaternion rings (a,b / Z/n): arithmetic, classification and isomorphism witnesses."""

from .classify import HAMILTON, ELL, IsoWitness, build_witness, classify, verify_witness
from .errors import BudgetExceeded, NoSolution, NonSmoothPoint, NotAUnit, QuatringError
from .modint import Modulus, Residue, factorize
from .quat import Quaternion, RingParams, ell, hamilton

__all__ = [
    "HAMILTON", "ELL", "IsoWitness", "build_witness", "classify", "verify_witness",
    "BudgetExceeded", "NoSolution", "NonSmoothPoint", "NotAUnit", "QuatringError",
    "Modulus", "Residue", "factorize", "Quaternion", "RingParams", "ell", "hamilton",
]
