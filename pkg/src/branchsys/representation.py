"""Concrete generator actions and the Cuntz-Krieger relation suite.

A branching system represents the graph algebra on functions over X:

* the vertex projection for v multiplies by the indicator of D_v;
* the edge isometry for e transports a function through the inverse
  edge map onto R_e, scaled by the square root of the inverse map's
  Radon-Nikodym weight (1/|slope| per affine piece);
* its adjoint transports back through the edge map onto D_{r(e)},
  scaled by the square root of |slope|.

`verify_relations` checks the four defining relations twice over:
set-level, via exact interval algebra on the supports (these checks are
decisions, not approximations), and probe-level, by pushing seeded
random piecewise polynomials through both sides of each relation and
measuring the L2 residual, which is pure floating-point noise when the
set-level facts hold.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .branching import BranchingSystem
from .intervals import IntervalSet
from .ppoly import PPoly

__all__ = [
    "Generator",
    "parse_word",
    "apply_vertex_projection",
    "apply_edge_isometry",
    "apply_edge_isometry_adjoint",
    "apply_generator",
    "apply_word",
    "RelationCheck",
    "RelationReport",
    "verify_relations",
    "random_ppoly",
]


@dataclass(frozen=True, slots=True)
class Generator:
    """One factor of an operator word: kind is 'P', 'S', or 'S*'."""

    kind: str
    ident: str

    def __post_init__(self):
        if self.kind not in ("P", "S", "S*"):
            raise ValueError(f"unknown generator kind {self.kind!r}")


def parse_word(text: str) -> tuple[Generator, ...]:
    """Parse whitespace-separated tokens ``P_<vertex>``, ``S_<edge>``,
    ``S_<edge>*`` into a word, applied rightmost-first."""
    tokens = text.split()
    if not tokens:
        raise ValueError("empty operator word")
    out = []
    for tok in tokens:
        star = tok.endswith("*")
        body = tok[:-1] if star else tok
        if body.startswith("S_") and len(body) > 2:
            out.append(Generator("S*" if star else "S", body[2:]))
        elif body.startswith("P_") and len(body) > 2 and not star:
            out.append(Generator("P", body[2:]))
        else:
            raise ValueError(f"bad token {tok!r} in operator word")
    return tuple(out)


def apply_vertex_projection(bs: BranchingSystem, v: str, phi: PPoly) -> PPoly:
    """Multiplication by the indicator of D_v."""
    if v not in bs.D:
        raise KeyError(f"unknown vertex {v!r}")
    return phi.restrict(bs.D[v])


def apply_edge_isometry(bs: BranchingSystem, e: str, phi: PPoly) -> PPoly:
    """Isometric transport onto R_e through the inverse edge map."""
    if e not in bs.f:
        raise KeyError(f"unknown edge {e!r}")
    out = PPoly.zero()
    for piece in bs.f[e].pieces:
        inv = piece.inverse()
        weight = math.sqrt(float(abs(inv.a)))
        moved = phi.compose_affine(inv.a, inv.b).restrict(inv.src)
        out = out + weight * moved
    return out


def apply_edge_isometry_adjoint(bs: BranchingSystem, e: str, phi: PPoly) -> PPoly:
    """Adjoint transport onto D_{r(e)} through the edge map."""
    if e not in bs.f:
        raise KeyError(f"unknown edge {e!r}")
    out = PPoly.zero()
    for piece in bs.f[e].pieces:
        weight = math.sqrt(float(abs(piece.a)))
        moved = phi.compose_affine(piece.a, piece.b).restrict(piece.src)
        out = out + weight * moved
    return out


def apply_generator(bs: BranchingSystem, gen: Generator, phi: PPoly) -> PPoly:
    if gen.kind == "P":
        return apply_vertex_projection(bs, gen.ident, phi)
    if gen.kind == "S":
        return apply_edge_isometry(bs, gen.ident, phi)
    return apply_edge_isometry_adjoint(bs, gen.ident, phi)


def apply_word(bs: BranchingSystem, word, phi: PPoly) -> PPoly:
    """Apply a product of generators, rightmost factor first."""
    if isinstance(word, str):
        word = parse_word(word)
    if not word:
        raise ValueError("empty operator word")
    for gen in reversed(tuple(word)):
        phi = apply_generator(bs, gen, phi)
    return phi


# -- relation suite ------------------------------------------------------------


@dataclass
class RelationCheck:
    name: str
    set_ok: bool
    violations: list[tuple[str, ...]]
    probe_residual: float | None = None

    def to_obj(self) -> dict:
        return {
            "set_ok": self.set_ok,
            "violations": [list(v) for v in self.violations],
            "probe_residual": self.probe_residual,
        }


@dataclass
class RelationReport:
    checks: list[RelationCheck]
    trials: int
    tol: float
    seed: int

    @property
    def max_residual(self) -> float | None:
        residuals = [c.probe_residual for c in self.checks if c.probe_residual is not None]
        return max(residuals) if residuals else None

    @property
    def passed(self) -> bool:
        if not all(c.set_ok for c in self.checks):
            return False
        worst = self.max_residual
        return worst is None or worst <= self.tol

    def to_obj(self) -> dict:
        return {
            "passed": self.passed,
            "trials": self.trials,
            "tol": self.tol,
            "seed": self.seed,
            "max_residual": self.max_residual,
            "relations": {c.name: c.to_obj() for c in self.checks},
        }


def random_ppoly(
    rng: random.Random,
    region: IntervalSet,
    degree: int = 3,
    pieces: int = 2,
    max_denominator: int = 64,
    complex_coeffs: bool = True,
) -> PPoly:
    """Seeded random test function supported inside `region`.

    Breakpoints are rationals with small denominators (so canonical forms
    stay small while still exercising the piece-splitting logic);
    coefficients are uniform in [-1, 1] on each axis.
    """
    hull = region.hull()
    if hull is None:
        return PPoly.zero()
    cuts: set[Fraction] = set()
    while len(cuts) < 2 * pieces:
        den = rng.randint(1, max_denominator)
        num = rng.randint(0, den)
        cuts.add(hull.lo + Fraction(num, den) * hull.length)
    points = sorted(cuts)
    segs = []
    for i in range(0, len(points) - 1, 2):
        lo, hi = points[i], points[i + 1]
        if lo >= hi:
            continue
        n = rng.randint(1, degree + 1)
        coeffs = [
            complex(rng.uniform(-1, 1), rng.uniform(-1, 1) if complex_coeffs else 0.0)
            for _ in range(n)
        ]
        segs.append((lo, hi, coeffs))
    return PPoly(segs).restrict(region)


def _l2_diff(a: PPoly, b: PPoly) -> float:
    return (a - b).norm2()


def verify_relations(
    bs: BranchingSystem,
    trials: int = 20,
    degree: int = 3,
    tol: float = 1e-9,
    seed: int = 42,
) -> RelationReport:
    """Check the four defining relations set-level and (trials > 0)
    probe-level.  Runs on any system; failures are reported, not raised."""
    g = bs.graph
    edges = sorted(g.edges, key=lambda e: e.id)
    vertices = sorted(g.vertices)
    regular = sorted(v for v in vertices if g.out_edges(v))

    orth = RelationCheck("projections-orthogonal", True, [])
    for i, u in enumerate(vertices):
        for v in vertices[i + 1 :]:
            if not bs.D[u].intersect(bs.D[v]).is_empty:
                orth.set_ok = False
                orth.violations.append((u, v))
    rng_proj = RelationCheck("range-projection", True, [])
    for e in edges:
        if not bs.f[e.id].domain.ae_equal(bs.D[e.dst]):
            rng_proj.set_ok = False
            rng_proj.violations.append((e.id,))
    domination = RelationCheck("source-domination", True, [])
    for e in edges:
        if not bs.R[e.id].ae_subset(bs.D[e.src]):
            domination.set_ok = False
            domination.violations.append((e.id,))
    vertex_sum = RelationCheck("vertex-sum", True, [])
    for v in regular:
        covered = IntervalSet()
        for e in g.out_edges(v):
            covered = covered.union(bs.R[e.id])
        if not bs.D[v].ae_equal(covered):
            vertex_sum.set_ok = False
            vertex_sum.violations.append((v,))

    if trials > 0:
        r_orth = r_range = r_dom = r_sum = 0.0
        for t in range(trials):
            rng = random.Random(f"{seed}:{t}")
            phi = random_ppoly(rng, bs.X, degree=degree)
            ss_star: dict[str, PPoly] = {}
            for e in edges:
                s_phi = apply_edge_isometry(bs, e.id, phi)
                both = apply_edge_isometry_adjoint(bs, e.id, s_phi)
                r_range = max(r_range, _l2_diff(both, phi.restrict(bs.D[e.dst])))
                star_phi = apply_edge_isometry_adjoint(bs, e.id, phi)
                ss = apply_edge_isometry(bs, e.id, star_phi)
                ss_star[e.id] = ss
                r_dom = max(r_dom, _l2_diff(ss.restrict(bs.D[e.src]), ss))
            for v in regular:
                total = PPoly.zero()
                for e in sorted(g.out_edges(v), key=lambda x: x.id):
                    total = total + ss_star[e.id]
                r_sum = max(r_sum, _l2_diff(phi.restrict(bs.D[v]), total))
            for i, u in enumerate(vertices):
                for v in vertices[i + 1 :]:
                    r_orth = max(
                        r_orth, phi.restrict(bs.D[v]).restrict(bs.D[u]).norm2()
                    )
        orth.probe_residual = r_orth
        rng_proj.probe_residual = r_range
        domination.probe_residual = r_dom
        vertex_sum.probe_residual = r_sum

    return RelationReport([orth, rng_proj, domination, vertex_sum], trials, tol, seed)
