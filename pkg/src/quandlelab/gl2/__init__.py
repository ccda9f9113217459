"""Conjugation quandles on conjugacy classes of GL(2, C)."""
from .matrix import DEFAULT_TOL, Mat2, SingularMatrixError, conj_op, nth_root_matrix, residual
from .classes import DiagPair, Jordan, Scalar, classify, in_class, sample_members
from .witness import Status, WitnessReport, conjugator_space, two_step_path, witness_in_class
