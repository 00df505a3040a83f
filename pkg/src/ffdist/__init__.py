"""Distance-graph statistics of subsets of F_q^d, cross-checked by Fourier analysis and enumeration."""
from .errors import DegenerateDistanceError, ScaleGuardError
from .field import FieldParams, Point, PointSet, character, index_point, norm, point_index
from .kernels import BACKEND

__version__ = "0.1.0"
