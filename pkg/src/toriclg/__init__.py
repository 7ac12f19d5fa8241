"""Exact duality for toric Landau-Ginzburg models."""

__version__ = "0.1.0"

from .errors import ConsistencyError
from .exactlinalg import CZ, TorsionError
from .lineardata import LinearData, ToricLGModel, dualize, kopasetic_check, pair_kopasetic
from .polyhedra import Polyhedron, PointSet
from .sigma import SectionSpec, SplitBundleData, ToricVarietyData, build_lg
from .structure import analyze, is_bundle, section_test
