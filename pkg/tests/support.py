"""Shared fixtures: random expression trees, the Moebius pair suite and
normalized f / Phi fixtures."""

from __future__ import annotations

import numpy as np

from subord_lab.analytic import (Add, Compose, Const, Div, Exp, Log, Mul, Pow, Sub, Z,
                                 branch_margin, evaluate)
from subord_lab.families import janowski

SAFE = 0.1
BOUND = 1e3
EXPONENTS = (2, 3, -1, -2, 0.5, 1.5, -0.5, 1 / 3 + 0.2j)


def _ok(values) -> bool:
    return bool(np.all(np.isfinite(values)) and np.max(np.abs(values)) <= BOUND)


def _leaf(rng):
    r = rng.uniform()
    if r < 0.5:
        return Z
    if r < 0.8:
        return Const(round(float(rng.uniform(-2, 2)), 3))
    return Const(complex(round(rng.uniform(-1, 1), 3), round(rng.uniform(-1, 1), 3)))


def _value(m, pts):
    with np.errstate(all="ignore"):
        try:
            return evaluate(m, pts)
        except Exception:
            return None


def random_tree(rng, pts, depth: int):
    """A tree of depth <= ``depth`` that evaluates finitely on ``pts`` with
    magnitudes <= 1e3, denominators >= 0.1 and non-integral power or log
    arguments at least 0.1 away from the cut."""
    if depth == 0 or rng.uniform() < 0.2:
        return _leaf(rng)
    op = rng.choice(["add", "sub", "mul", "div", "pow", "log", "exp", "compose"])
    left = random_tree(rng, pts, depth - 1)
    lv = _value(left, pts)
    if op in ("add", "sub", "mul", "div"):
        right = random_tree(rng, pts, depth - 1)
        rv = _value(right, pts)
        if op == "div" and (rv is None or np.min(np.abs(rv)) < SAFE):
            return left
        node = {"add": Add, "sub": Sub, "mul": Mul, "div": Div}[op](left, right)
    elif op == "pow":
        c = EXPONENTS[int(rng.integers(len(EXPONENTS)))]
        integral = complex(c).imag == 0 and float(complex(c).real).is_integer()
        if lv is None or (not integral and np.min(branch_margin(lv)) < SAFE):
            return left
        if complex(c).real < 0 and np.min(np.abs(lv)) < SAFE:
            return left
        node = Pow(left, complex(c))
    elif op == "log":
        if lv is None or np.min(branch_margin(lv)) < SAFE:
            return left
        node = Log(left)
    elif op == "exp":
        if lv is None or np.max(lv.real) > 5:
            return left
        node = Exp(left)
    else:
        if lv is None:
            return left
        outer = random_tree(rng, lv, depth - 1)
        node = Compose(outer, left)
    nv = _value(node, pts)
    return node if nv is not None and _ok(nv) else left


def random_disk_points(rng, n: int, rmax: float = 0.9) -> np.ndarray:
    r = rmax * np.sqrt(rng.uniform(size=n))
    return r * np.exp(2j * np.pi * rng.uniform(size=n))


def mobius(a, b):
    return (1 + Const(a) * Z) / (1 + Const(b) * Z)


def mobius_suite() -> list[tuple[str, object, object]]:
    """50 (label, f, g) pairs of disk and half-plane maps, none tangent."""
    pairs = []
    hp = janowski(1.0, -1.0)
    for r in (0.2, 0.5, 0.8, 0.95, 1.2, 1.5, 1.9, 2.5):
        pairs.append((f"1+{r}z in half-plane", 1 + r * Z, hp))
    for A, B in ((0.5, -0.5), (0.8, -0.3), (0.3, -0.7), (0.9, -0.9)):
        g = janowski(A, B)
        for c in (0.3, 0.7, 0.95):
            pairs.append((f"J({A},{B})(cz) c={c}", mobius(c * A, c * B), g))
        for s in (1.2, 1.05):
            if s * abs(B) < 1 and s * A <= 1.5:
                pairs.append((f"J({A},{B})(sz) s={s}", mobius(s * A, s * B), g))
        pairs.append((f"J({A},{B}) vs expanded", g, janowski(min(1.0, A + 0.1), B)))
        pairs.append((f"expanded vs J({A},{B})", janowski(min(1.0, A + 0.1), B), g))
    for phi in (0.4, 1.3, 2.0, 2.9):
        rot = np.exp(1j * phi)
        pairs.append((f"rotated J(0.5,-0.5)(0.6 e^i{phi} z)",
                      mobius(0.5 * 0.6 * rot, -0.5 * 0.6 * rot), janowski(0.5, -0.5)))
        if phi != 2.0:
            pairs.append((f"rotated half-plane disk {phi}", 1 + 0.7 * rot * Z, hp))
    for A, B in ((0.5, -0.5), (0.2, -0.2)):
        pairs.append((f"J({A},{B}) in half-plane", janowski(A, B), hp))
        pairs.append((f"half-plane in J({A},{B})", hp, janowski(A, B)))
    pairs.append(("shifted disk", 1 + 0.4 * Z + 0.1 * Z * Z, janowski(0.6, -0.4)))
    pairs.append(("self", janowski(0.4, -0.3), janowski(0.4, -0.3)))
    pairs.append(("self half-plane", hp, hp))
    pairs.append(("off-center", 1 + 0.2j + 0.1 * Z, hp))
    return pairs[:50]


# normalized f fixtures, built as z u(z)
F_FIXTURES = {
    "z/(1-z)": Z / (1 - Z),
    "z": Z,
    "z/(1-0.5z)": Z / (1 - 0.5 * Z),
    "z e^(0.3z)": Z * Exp(0.3 * Z),
    "z+0.2z^2": Z + 0.2 * Z * Z,
    "z(1+0.3z)/(1-0.2z)": Z * (1 + 0.3 * Z) / (1 - 0.2 * Z),
    "z(1-0.4z)^-1.5": Z * Pow(1 - 0.4 * Z, -1.5),
}

PHI_FIXTURES = {
    "w": Z,
    "w+w^2/2": Z + 0.5 * Z * Z,
    "w/(1+0.1w)": Z / (1 + 0.1 * Z),
    "w+0.3w^2": Z + 0.3 * Z * Z,
}


def philike_fixtures(n: int = 20, seed: int = 11) -> list[tuple[str, object, object, float]]:
    """(label, f, Phi, alpha) triples, always including the two canonical ones.

    z/(1-z) is not paired with w/(1+0.1w): there z f'/Phi(f) reaches ~1e5 near
    the boundary and an absolute residual bound measures only roundoff."""
    out = [("z/(1-z), w, 1", F_FIXTURES["z/(1-z)"], PHI_FIXTURES["w"], 1.0),
           ("z/(1-z), w+w^2/2, 0.7", F_FIXTURES["z/(1-z)"], PHI_FIXTURES["w+w^2/2"], 0.7)]
    rng = np.random.default_rng(seed)
    fnames, pnames = sorted(F_FIXTURES), sorted(PHI_FIXTURES)
    while len(out) < n:
        fn = fnames[int(rng.integers(len(fnames)))]
        pn = pnames[int(rng.integers(len(pnames)))]
        a = round(float(rng.uniform(0.2, 1.5)), 3)
        if (fn, pn) == ("z/(1-z)", "w/(1+0.1w)"):
            continue
        out.append((f"{fn}, {pn}, {a}", F_FIXTURES[fn], PHI_FIXTURES[pn], a))
    return out
