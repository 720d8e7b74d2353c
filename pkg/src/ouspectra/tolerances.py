"""Numeric tolerance bundle threaded through every model."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tol:
    """Tolerances for equality, cone membership and spectral support cuts.

    eq_tol      equality of elements / residual norms
    psd_tol     cone-membership slack
    eig_cut     relative threshold deciding spectral support membership
    max_sweeps  sweep budget of the rotation eigensolver
    """

    eq_tol: float = 1e-9
    psd_tol: float = 1e-10
    eig_cut: float = 1e-8
    max_sweeps: int = 100

    def __post_init__(self) -> None:
        if self.eq_tol <= 0 or self.psd_tol <= 0 or self.eig_cut <= 0:
            raise ValueError("tolerances must be strictly positive")
        if self.max_sweeps <= 0:
            raise ValueError("max_sweeps must be a positive integer")

    def as_dict(self) -> dict:
        return {
            "eq_tol": self.eq_tol,
            "psd_tol": self.psd_tol,
            "eig_cut": self.eig_cut,
            "max_sweeps": self.max_sweeps,
        }


DEFAULT_TOL = Tol()
