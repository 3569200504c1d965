"""Point configurations in projective space and the seeded samplers.

A configuration is an ordered list of n points in P^d, stored as the columns
of a (d+1) x n matrix over an exact field. Samplers cover the families the
equation modules are tested against: points on a rational normal curve,
points on degenerations of such curves (chains of lower-degree curves glued
at points), nodal-conic splits, generic clouds, and degenerate clouds inside
a hyperplane. All sampling is deterministic given (field, seed, height).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import BudgetExceededError, DegenerateInputError, ShapeError, SpanFailureError
from .fields import Field, Scalar, require_same_field
from .jets import Jet
from .linalg import Matrix, as_index_set, rank

#: Resample budget for rejection loops (invertible draws, chart retries, spans).
RETRY_BUDGET = 32


class PointConfiguration:
    """n points of P^d as the columns of a (d+1) x n coordinate matrix."""

    __slots__ = ("field", "d", "n", "coords")

    def __init__(self, field: Field, d: int, n: int, coords: Matrix):
        if d < 1:
            raise ShapeError(f"d must be >= 1, got {d}")
        if coords.shape != (d + 1, n):
            raise ShapeError(f"coords must be {(d + 1, n)}, got {coords.shape}")
        require_same_field(field, coords.field, "configuration coordinates")
        for j in range(n):
            if all(x == 0 for x in coords.column(j)):
                raise DegenerateInputError(f"point {j + 1} has all-zero coordinates")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("PointConfiguration is immutable")

    def point(self, i: int) -> tuple[Scalar, ...]:
        """1-based point access."""
        if not 1 <= i <= self.n:
            raise IndexError(f"point index {i} outside [1, {self.n}]")
        return self.coords.column(i - 1)

    def points(self) -> list[tuple[Scalar, ...]]:
        return self.coords.columns()

    def subconfig(self, I: Iterable[int]) -> "PointConfiguration":
        """Restrict to the 1-based point subset I (order preserved)."""
        I = as_index_set(I, ground=self.n)
        return PointConfiguration(self.field, self.d, len(I), self.coords.select_columns(I))

    def apply(self, g: Matrix) -> "PointConfiguration":
        """Act by a projectivity: columns become g . column."""
        if g.shape != (self.d + 1, self.d + 1):
            raise ShapeError(f"projectivity must be {(self.d + 1, self.d + 1)}")
        return PointConfiguration(self.field, self.d, self.n, g.matmul(self.coords))

    def __repr__(self):
        return f"PointConfiguration({self.field}, d={self.d}, n={self.n})"


def make_config(field: Field, d: int, n: int, columns: Sequence[Sequence]) -> PointConfiguration:
    """Build a configuration from n coordinate columns of length d+1."""
    if len(columns) != n:
        raise ShapeError(f"expected {n} columns, got {len(columns)}")
    return PointConfiguration(field, d, n, Matrix.from_columns(field, columns))


def canonical_coords(p: PointConfiguration) -> Matrix:
    """Scale each column so its first nonzero entry is 1."""
    f = p.field
    cols = []
    for j in range(p.n):
        col = p.coords.column(j)
        lead = next(x for x in col if x != 0)
        inv = f.inv(lead)
        cols.append([f.mul(x, inv) for x in col])
    return Matrix.from_columns(f, cols)


def semantic_eq(p: PointConfiguration, q: PointConfiguration) -> bool:
    """Equality as ordered projective point lists (scaling-insensitive)."""
    if (p.field, p.d, p.n) != (q.field, q.d, q.n):
        return False
    return canonical_coords(p) == canonical_coords(q)


def is_degenerate(p: PointConfiguration) -> bool:
    """True when the points fail to span P^d."""
    return rank(p.coords) < p.d + 1


def strong_nondegeneracy_witness(p: PointConfiguration) -> Optional[int]:
    """1-based index i such that dropping point i kills the span, or None."""
    if p.n < p.d + 2:
        # dropping any point leaves too few to span
        return 1 if p.n >= 1 else None
    if is_degenerate(p):
        return 1
    for i in range(1, p.n + 1):
        if rank(p.coords.delete_column(i)) < p.d + 1:
            return i
    return None


def is_strongly_nondegenerate(p: PointConfiguration) -> bool:
    """Every n-1 of the n points still span P^d."""
    return strong_nondegeneracy_witness(p) is None


# ---------------------------------------------------------------------------
# rational normal curves
# ---------------------------------------------------------------------------


def rnc_point(field: Field, d: int, t: Sequence) -> tuple[Scalar, ...]:
    """Degree-d moment curve point (t0^d, t0^(d-1) t1, ..., t1^d) for t = (t0, t1)."""
    t0 = field.normalize(t[0])
    t1 = field.normalize(t[1])
    if t0 == 0 and t1 == 0:
        raise DegenerateInputError("(0, 0) is not a point of P^1")
    return tuple(
        field.mul(field.pow(t0, d - k), field.pow(t1, k)) for k in range(d + 1)
    )


@dataclass(frozen=True)
class SampleRecipe:
    """Deterministic sampling parameters: same recipe, same output."""

    field: Field
    seed: int
    height: int = 100

    def rng(self) -> random.Random:
        return random.Random(self.seed)


def random_matrix(field: Field, rows: int, cols: int, rng, height: int = 100) -> Matrix:
    return Matrix(
        field, [[field.random_scalar(rng, height) for _ in range(cols)] for _ in range(rows)]
    )


def random_invertible(field: Field, size: int, rng, height: int = 100) -> Matrix:
    from .linalg import det  # local import keeps module load cheap

    for _ in range(RETRY_BUDGET):
        m = random_matrix(field, size, size, rng, height)
        if det(m) != 0:
            return m
    raise BudgetExceededError(f"no invertible {size}x{size} draw in {RETRY_BUDGET} tries")


def _distinct_affine_params(field: Field, count: int, rng, height: int) -> list[tuple[Scalar, Scalar]]:
    seen: set = set()
    out: list[tuple[Scalar, Scalar]] = []
    budget = RETRY_BUDGET * count + RETRY_BUDGET
    while len(out) < count:
        if budget == 0:
            raise BudgetExceededError(f"could not draw {count} distinct parameters")
        budget -= 1
        a = field.random_scalar(rng, height)
        if a in seen:
            continue
        seen.add(a)
        out.append((field.one, a))
    return out


def sample_on_rnc(
    field: Field,
    d: int,
    n: int,
    seed: int | None = None,
    rng=None,
    g: Matrix | None = None,
    params: Sequence[Sequence] | None = None,
    height: int = 100,
) -> PointConfiguration:
    """n points on a rational normal curve of degree d.

    The curve is g . (moment curve); g defaults to a seeded random invertible
    matrix, so distinct seeds give distinct curves. Parameters default to n
    distinct seeded values.
    """
    if rng is None:
        rng = random.Random(seed)
    if params is None:
        params = _distinct_affine_params(field, n, rng, height)
    elif len(params) != n:
        raise ShapeError(f"expected {n} parameters, got {len(params)}")
    if g is None:
        g = random_invertible(field, d + 1, rng, height)
    cols = [rnc_point(field, d, t) for t in params]
    return make_config(field, d, n, cols).apply(g)


def sample_generic(
    field: Field, d: int, n: int, seed: int | None = None, rng=None, height: int = 100
) -> PointConfiguration:
    """Random configuration, resampled until strongly nondegenerate."""
    if n < d + 2:
        raise ShapeError(f"need n >= d + 2 for strong nondegeneracy, got n={n}, d={d}")
    if rng is None:
        rng = random.Random(seed)
    for _ in range(RETRY_BUDGET):
        cols = []
        for _ in range(n):
            col = [field.random_scalar(rng, height) for _ in range(d + 1)]
            while all(x == 0 for x in col):
                col = [field.random_scalar(rng, height) for _ in range(d + 1)]
            cols.append(col)
        p = make_config(field, d, n, cols)
        if is_strongly_nondegenerate(p):
            return p
    raise BudgetExceededError("no strongly nondegenerate draw within budget")


def sample_degenerate(
    field: Field, d: int, n: int, seed: int | None = None, rng=None, height: int = 100
) -> PointConfiguration:
    """n points inside a hyperplane of P^d (so the configuration never spans)."""
    if d < 2:
        raise ShapeError("degenerate sampling needs d >= 2")
    if rng is None:
        rng = random.Random(seed)
    for _ in range(RETRY_BUDGET):
        frame = random_matrix(field, d + 1, d, rng, height)
        if rank(frame) < d:
            continue
        coeffs = random_matrix(field, d, n, rng, height)
        cols = frame.matmul(coeffs)
        if any(all(x == 0 for x in cols.column(j)) for j in range(n)):
            continue
        return PointConfiguration(field, d, n, cols)
    raise BudgetExceededError("no hyperplane sample within budget")


def sample_nodal_conic(
    field: Field,
    n: int,
    seed: int | None = None,
    rng=None,
    split: tuple[int, int] | None = None,
    height: int = 100,
) -> PointConfiguration:
    """n points of P^2 on a union of two distinct lines (a degenerate conic).

    `split` fixes how many points land on each line; default is balanced.
    """
    if rng is None:
        rng = random.Random(seed)
    if split is None:
        split = (n - n // 2, n // 2)
    if sum(split) != n or min(split) < 0:
        raise ShapeError(f"split {split} does not partition {n} points")
    g = random_invertible(field, 3, rng, height)
    node, u1, u2 = (g.column(0), g.column(1), g.column(2))
    cols = []
    for count, direction in zip(split, (u1, u2)):
        for _ in range(count):
            while True:
                a = field.random_scalar(rng, height)
                b = field.random_scalar(rng, height)
                col = [
                    field.add(field.mul(a, x), field.mul(b, y))
                    for x, y in zip(node, direction)
                ]
                if any(x != 0 for x in col):
                    cols.append(col)
                    break
    return make_config(field, 2, n, cols)


# ---------------------------------------------------------------------------
# quasi-Veronese chains: unions of lower-degree curves glued at points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainComponent:
    """One irreducible piece of a degenerated curve.

    The piece is the degree-`degree` moment curve pushed through `frame`
    (a (d+1) x (degree+1) matrix of full column rank): t maps to
    frame . moment(t). `fresh_axes` are the 1-based coordinate axes owned
    exclusively by this component; `parent` (0-based component index) and
    `gluing_param` record where the piece is attached — the frame's first
    column is the gluing point, reached at t = (1, 0). The root has
    parent None.
    """

    degree: int
    frame: Matrix
    fresh_axes: tuple[int, ...]
    parent: Optional[int]
    gluing_param: Optional[tuple[Scalar, Scalar]]


@dataclass(frozen=True)
class QuasiVeroneseDescriptor:
    """A connected union of rational curves of total degree d spanning P^d."""

    field: Field
    d: int
    components: tuple[ChainComponent, ...]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(c.degree for c in self.components)

    def point_on(self, comp: int, t: Sequence) -> tuple[Scalar, ...]:
        """Coordinates of the component's parameterization at t."""
        c = self.components[comp]
        mom = rnc_point(self.field, c.degree, t)
        col = Matrix.from_columns(self.field, [mom])
        return c.frame.matmul(col).column(0)


def quasi_veronese_descriptor(
    field: Field,
    d: int,
    degrees: Sequence[int],
    seed: int | None = None,
    rng=None,
    attachments: Sequence[tuple[int, Sequence]] | None = None,
    height: int = 100,
) -> QuasiVeroneseDescriptor:
    """Build a degree-d chain of rational normal curves glued at points.

    `degrees` lists the component degrees (must sum to d, each >= 1). The
    first component is the moment curve on the leading coordinates; each
    later component is glued to a point of an earlier one and bends into
    `degree` fresh coordinate directions, so the union always spans P^d.
    `attachments[j-1] = (parent, t)` places component j (0-based `parent` <
    j); default attaches to the previous component at a seeded parameter.
    """
    degrees = tuple(int(x) for x in degrees)
    if not degrees or any(x < 1 for x in degrees):
        raise ShapeError(f"component degrees must be positive, got {degrees}")
    if sum(degrees) != d:
        raise ShapeError(f"component degrees {degrees} must sum to d = {d}")
    if rng is None:
        rng = random.Random(seed)
    if attachments is not None and len(attachments) != len(degrees) - 1:
        raise ShapeError("need one attachment per non-root component")

    comps: list[ChainComponent] = []
    next_axis = degrees[0] + 1
    for j, deg in enumerate(degrees):
        if j == 0:
            frame = Matrix(
                field,
                [
                    [field.one if r == c else field.zero for c in range(deg + 1)]
                    for r in range(d + 1)
                ],
            )
            comps.append(ChainComponent(deg, frame, tuple(range(1, deg + 2)), None, None))
            continue
        if attachments is None:
            parent = j - 1
            t = (field.one, field.random_nonzero(rng, height))
        else:
            parent, t_raw = attachments[j - 1]
            parent = int(parent)
            if not 0 <= parent < j:
                raise ShapeError(f"component {j} cannot attach to component {parent}")
            t = (field.normalize(t_raw[0]), field.normalize(t_raw[1]))
        glue = QuasiVeroneseDescriptor(field, d, tuple(comps)).point_on(parent, t)
        axes = tuple(range(next_axis + 1, next_axis + deg + 1))
        next_axis += deg
        frame_cols = [glue] + [
            [field.one if r == ax - 1 else field.zero for r in range(d + 1)] for ax in axes
        ]
        frame = Matrix.from_columns(field, frame_cols)
        if rank(frame) < deg + 1:
            raise DegenerateInputError(
                f"component {j} frame is rank deficient (gluing point hit a fresh axis)"
            )
        comps.append(ChainComponent(deg, frame, axes, parent, t))

    all_frames = comps[0].frame
    for c in comps[1:]:
        all_frames = all_frames.hstack(c.frame)
    if rank(all_frames) < d + 1:
        raise SpanFailureError("component spans do not fill P^d")
    return QuasiVeroneseDescriptor(field, d, tuple(comps))


def sample_quasi_veronese_chain(
    field: Field,
    d: int,
    n: int,
    degrees: Sequence[int],
    seed: int | None = None,
    rng=None,
    counts: Sequence[int] | None = None,
    attachments: Sequence[tuple[int, Sequence]] | None = None,
    height: int = 100,
) -> tuple[QuasiVeroneseDescriptor, PointConfiguration]:
    """Sample n points on a seeded quasi-Veronese chain.

    `counts` fixes how many points land on each component (default: as even
    as possible, front-loaded). Points use distinct nonzero parameters per
    component, so they avoid the gluing points generically.
    """
    if rng is None:
        rng = random.Random(seed)
    desc = quasi_veronese_descriptor(field, d, degrees, rng=rng, attachments=attachments, height=height)
    m = len(desc.components)
    if counts is None:
        base, extra = divmod(n, m)
        counts = tuple(base + (1 if j < extra else 0) for j in range(m))
    else:
        counts = tuple(int(x) for x in counts)
        if len(counts) != m or any(c < 0 for c in counts) or sum(counts) != n:
            raise ShapeError(f"counts {counts} must partition {n} over {m} components")
    cols = []
    for j, count in enumerate(counts):
        if count == 0:
            continue
        params = _distinct_affine_params(field, count, rng, height)
        for t in params:
            col = desc.point_on(j, t)
            if all(x == 0 for x in col):
                raise DegenerateInputError("sampled a zero vector on a chain component")
            cols.append(col)
    return desc, make_config(field, d, n, cols)


# ---------------------------------------------------------------------------
# dimension of the closure of rational-normal-curve configurations
# ---------------------------------------------------------------------------


def dimension_estimate(
    d: int,
    n: int,
    seed: int | None = None,
    field: Field | None = None,
    height: int = 100,
) -> int:
    """Rank of the exact Jacobian of (g, t) -> curve configuration at a random point.

    The map sends a (d+1) x (d+1) matrix g and parameters t_1..t_n to the
    affine-chart coordinates of the n points g . moment(t_i). For generic
    inputs the rank equals the dimension of the closure of its image, which
    is d^2 + 2d + n - 3 once n >= d + 3 (the fiber is the 3-dimensional
    Mobius action plus the 1-dimensional scaling of g, which together span a
    4-dimensional kernel — the scaling already lies inside the Mobius
    directions' span under the degree-d action, which is why the raw rank is
    returned unmodified).

    Points falling outside the affine chart (leading coordinate zero) are
    retried with fresh randomness, up to a budget.
    """
    if d < 1 or n < 1:
        raise ShapeError(f"need d >= 1 and n >= 1, got ({d}, {n})")
    if field is None:
        field = Field.prime()
    rng = random.Random(seed)
    ng = (d + 1) * (d + 1)
    nvars = ng + n

    for _ in range(RETRY_BUDGET):
        g_vals = [field.random_scalar(rng, height) for _ in range(ng)]
        t_vals = [a for (_, a) in _distinct_affine_params(field, n, rng, height)]
        gj = [Jet.variable(field, v, k, nvars) for k, v in enumerate(g_vals)]
        rows: list[list[Scalar]] = []
        ok = True
        for i in range(n):
            ti = Jet.variable(field, t_vals[i], ng + i, nvars)
            mom = [ti**k for k in range(d + 1)]  # affine chart of the moment curve
            ys = []
            for r in range(d + 1):
                acc = Jet.constant(field, 0, nvars)
                for k in range(d + 1):
                    acc = acc + gj[r * (d + 1) + k] * mom[k]
                ys.append(acc)
            if ys[0].value == 0:
                ok = False
                break
            for r in range(1, d + 1):
                rows.append(list((ys[r] / ys[0]).partials))
        if not ok:
            continue
        return rank(Matrix(field, rows))
    raise BudgetExceededError("all chart retries hit a zero leading coordinate")
