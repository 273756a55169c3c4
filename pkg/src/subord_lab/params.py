"""The scalar parameter bundle shared by the transforms and applications."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadParams


def _pair(c: complex) -> list[float]:
    return [c.real, c.imag]


@dataclass(frozen=True)
class ParamSet:
    alpha: float = 1.0
    mu: float = 1.0
    beta: complex = 1.0
    gamma: complex = 0.0
    delta: complex = 0.0
    lam: complex | None = None
    A: float | None = None
    B: float | None = None

    def __post_init__(self):
        for name in ("beta", "gamma", "delta"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.lam is not None:
            object.__setattr__(self, "lam", complex(self.lam))
        if not 0.0 < self.mu <= 1.0:
            raise BadParams(f"mu must satisfy 0 < mu <= 1, got {self.mu}")
        if self.alpha + self.mu < 0.0:
            raise BadParams(f"alpha + mu must be >= 0, got {self.alpha + self.mu}")
        if self.beta == 0:
            raise BadParams("beta must be nonzero")
        if (self.A is None) != (self.B is None):
            raise BadParams("A and B go together")
        if self.A is not None and not -1.0 <= self.B < self.A <= 1.0:
            raise BadParams(f"need -1 <= B < A <= 1, got A={self.A}, B={self.B}")

    @property
    def ratio(self) -> float:
        """alpha / mu, the exponent of the flat form."""
        return self.alpha / self.mu

    def to_dict(self) -> dict:
        d = {
            "alpha": self.alpha,
            "mu": self.mu,
            "beta": _pair(self.beta),
            "gamma": _pair(self.gamma),
            "delta": _pair(self.delta),
        }
        if self.lam is not None:
            d["lambda"] = _pair(self.lam)
        if self.A is not None:
            d["A"], d["B"] = self.A, self.B
        return d
