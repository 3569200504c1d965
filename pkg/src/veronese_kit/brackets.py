"""Bracket polynomials and the higher-dimensional membership equations.

A bracket polynomial is an integer combination of products of brackets
|i_1 ... i_w| — maximal minors of a point configuration's coordinate matrix,
indexed by 1-based column sets of a ground set [m]. The six-point conic
equation is one such polynomial (four brackets of width 3 per term); its
higher-dimensional relatives are produced from it by relabeling into a
(d+4)-point ground set and *dualizing*: each bracket is traded for its
complementary bracket with the sign (-1)^(S_J + (m - w)), the sign law
relating the maximal minors of a configuration to those of its Gale
transform. Pulled back along every (d+4)-point subset, the dualized
polynomials cut out the closure of the configurations lying on a degree-d
rational normal curve (together with the non-spanning locus).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

from .configurations import PointConfiguration, is_degenerate
from .errors import ShapeError
from .fields import Scalar
from .linalg import IndexSet, MaximalMinors, Matrix, as_index_set, complement, s_index


def _sort_with_sign(factor: Sequence[int]) -> tuple[int, IndexSet]:
    """Sort bracket indices, tracking the permutation sign; 0 on repeats."""
    idx = [int(i) for i in factor]
    sign = 1
    # insertion sort; brackets have at most ~8 entries
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return 0, tuple(idx)
    return sign, tuple(idx)


@dataclass(frozen=True)
class BracketPolynomial:
    """Canonical-form bracket polynomial on ground set [ground], width-w brackets.

    Construction normalizes every term: factor indices sorted (brackets are
    alternating, so sorting multiplies by the permutation sign and a repeated
    index kills the factor), factors sorted within a term, like terms merged,
    zero terms dropped, terms in lexicographic factor order.
    """

    ground: int
    width: int
    terms: tuple[tuple[int, tuple[IndexSet, ...]], ...]

    def __init__(self, ground: int, width: int, terms: Iterable[tuple[int, Iterable]]):
        if ground < 1 or not 1 <= width <= ground:
            raise ShapeError(f"bad bracket shape: ground={ground}, width={width}")
        merged: dict[tuple[IndexSet, ...], int] = {}
        for coef, factors in terms:
            coef = int(coef)
            fs = []
            for factor in factors:
                sign, f = _sort_with_sign(factor)
                if len(f) != width:
                    raise ShapeError(f"factor {f} has width {len(f)}, expected {width}")
                if f[0] < 1 or f[-1] > ground:
                    raise ShapeError(f"factor {f} outside ground set [{ground}]")
                coef *= sign
                fs.append(f)
            if coef == 0:
                continue
            key = tuple(sorted(fs))
            merged[key] = merged.get(key, 0) + coef
        canon = tuple(
            (c, fs) for fs, c in sorted(merged.items(), key=lambda kv: kv[0]) if c != 0
        )
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "width", width)
        object.__setattr__(self, "terms", canon)

    def is_zero(self) -> bool:
        return not self.terms

    def multidegree(self) -> tuple[int, ...]:
        """Occurrences of each ground index per term (must be uniform across terms)."""
        if not self.terms:
            return (0,) * self.ground
        profiles = set()
        for _, factors in self.terms:
            counts = [0] * self.ground
            for f in factors:
                for i in f:
                    counts[i - 1] += 1
            profiles.add(tuple(counts))
        if len(profiles) > 1:
            raise ValueError("terms are not multihomogeneous of a common degree")
        return profiles.pop()

    def scale(self, c: int) -> "BracketPolynomial":
        return BracketPolynomial(self.ground, self.width, [(c * k, fs) for k, fs in self.terms])

    def __repr__(self):
        return f"BracketPolynomial(ground={self.ground}, width={self.width}, {format_bracket_poly(self)!r})"


def format_bracket_poly(P: BracketPolynomial) -> str:
    """Render in the sign/coefficient/bracket text form, e.g. "+ |1 2 3||4 5 6| - ..."."""
    if not P.terms:
        return "0"
    parts = []
    for coef, factors in P.terms:
        sign = "+" if coef > 0 else "-"
        mag = abs(coef)
        body = "".join("|" + " ".join(str(i) for i in f) + "|" for f in factors)
        parts.append(f"{sign} {mag} {body}" if mag != 1 else f"{sign} {body}")
    return " ".join(parts)


def parse_bracket_poly(text: str, ground: int, width: int) -> BracketPolynomial:
    """Inverse of `format_bracket_poly`; also accepts compact digit runs like |123|."""
    terms = []
    s = text.strip()
    if s == "0":
        return BracketPolynomial(ground, width, [])
    pos = 0
    while pos < len(s):
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos >= len(s):
            break
        if s[pos] not in "+-":
            raise ValueError(f"expected sign at ...{s[pos:pos + 12]!r}")
        sign = 1 if s[pos] == "+" else -1
        pos += 1
        while pos < len(s) and s[pos].isspace():
            pos += 1
        mag = 0
        digits = ""
        while pos < len(s) and s[pos].isdigit():
            digits += s[pos]
            pos += 1
        mag = int(digits) if digits else 1
        factors = []
        while True:
            while pos < len(s) and s[pos].isspace():
                pos += 1
            if pos >= len(s) or s[pos] != "|":
                break
            end = s.index("|", pos + 1)
            body = s[pos + 1 : end].strip()
            if " " in body:
                factor = [int(tok) for tok in body.split()]
            else:
                factor = [int(ch) for ch in body]
            factors.append(factor)
            pos = end + 1
        if not factors:
            raise ValueError("term with no brackets")
        terms.append((sign * mag, factors))
    return BracketPolynomial(ground, width, terms)


# ---------------------------------------------------------------------------
# the six-point conic polynomial and its relatives
# ---------------------------------------------------------------------------


def phi_as_bracket_poly() -> BracketPolynomial:
    """The six-point conic equation in bracket form (ground [6], width 3):

        |123||145||246||356| - |124||135||236||456|

    This is the classically displayed normalization; the determinantal
    evaluator `conic.phi_det` equals -1 times it (see conic.BRACKET_TO_DET_SIGN).
    """
    return BracketPolynomial(
        6,
        3,
        [
            (1, [(1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 5, 6)]),
            (-1, [(1, 2, 4), (1, 3, 5), (2, 3, 6), (4, 5, 6)]),
        ],
    )


def relabel(P: BracketPolynomial, I: Iterable[int], ground: int | None = None) -> BracketPolynomial:
    """Push the polynomial along the order embedding [P.ground] -> I subset of [ground].

    Position j of I replaces index j in every bracket; since I is strictly
    increasing no signs move. The new ground set defaults to max(I).
    """
    I = as_index_set(I, size=P.ground)
    m = ground if ground is not None else I[-1]
    if I[-1] > m:
        raise ShapeError(f"target ground [{m}] does not contain {I}")
    return BracketPolynomial(
        m,
        P.width,
        [(c, [tuple(I[i - 1] for i in f) for f in fs]) for c, fs in P.terms],
    )


def dualize(P: BracketPolynomial) -> BracketPolynomial:
    """Trade every bracket for its complement: m_J -> (-1)^(S_J + m - w) m_{J^c}.

    This is the sign law relating maximal minors of a configuration to those
    of its Gale transform, so the dual polynomial evaluates on a Gale
    transform exactly as the original does on the source (up to one global
    scalar). Applying it twice returns the input up to the documented global
    sign (-1)^(k (w (m-w) + m)) for k-factor terms.
    """
    m, w = P.ground, P.width
    fixed = m - w
    out = []
    for coef, factors in P.terms:
        sign = 1
        new_factors = []
        for f in factors:
            if (s_index(f) + fixed) % 2:
                sign = -sign
            new_factors.append(complement(f, m))
        out.append((coef * sign, new_factors))
    return BracketPolynomial(m, m - w, out)


@lru_cache(maxsize=None)
def psi_pattern(d: int, I: IndexSet) -> BracketPolynomial:
    """The width-(d+1) polynomial on [d+4] obtained from the conic equation
    by relabeling onto the six-element pattern I and dualizing."""
    if d < 2:
        raise ShapeError(f"patterns need d >= 2, got {d}")
    I = as_index_set(I, ground=d + 4, size=6)
    return dualize(relabel(phi_as_bracket_poly(), I, ground=d + 4))


@lru_cache(maxsize=None)
def psi_generators(d: int) -> tuple[tuple[IndexSet, BracketPolynomial], ...]:
    """All generators on d+4 points: one per six-element pattern, lex order."""
    return tuple(
        (I, psi_pattern(d, I)) for I in combinations(range(1, d + 5), 6)
    )


def eval_bracket_poly(
    P: BracketPolynomial, source: Union[PointConfiguration, Matrix, MaximalMinors]
) -> Scalar:
    """Evaluate with brackets as maximal minors of the source's coordinate matrix."""
    if isinstance(source, MaximalMinors):
        mm = source
    elif isinstance(source, PointConfiguration):
        mm = MaximalMinors(source.coords)
    else:
        mm = MaximalMinors(source)
    if mm.width != P.width:
        raise ShapeError(f"bracket width {P.width} != matrix height {mm.width}")
    if mm.matrix.cols < P.ground:
        raise ShapeError(f"ground set [{P.ground}] exceeds {mm.matrix.cols} columns")
    f = mm.matrix.field
    total = f.zero
    for coef, factors in P.terms:
        term = f.normalize(coef)
        for J in factors:
            if term == 0:
                break
            term = f.mul(term, mm.get(J))
        total = f.add(total, term)
    return total


# ---------------------------------------------------------------------------
# membership reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HigherEquationReport:
    """Outcome of evaluating the full generator family on one configuration.

    `witness` is (I, J, value): the pattern I (inside [d+4]), the 1-based
    point subset J of size d+4, and the nonzero value of the corresponding
    pullback — present exactly when `all_vanish` is False. `classification`
    is "NotInW" (a generator separates the configuration), "InY" (all vanish
    and the points do not span), or "InW" (all vanish, points span). `in_v`
    is True / False when membership in the curve-closure is decided,
    otherwise a short string saying why it is open.
    """

    d: int
    n: int
    degenerate: bool
    all_vanish: bool
    checked: int
    witness: Optional[tuple[IndexSet, IndexSet, Scalar]]
    classification: str
    in_v: Union[bool, str]
    note: str


#: (d, n) pairs where the non-spanning locus lies inside the curve-closure
#: (decided by the dimension comparison below).
Y_INSIDE_V_PAIRS = ((3, 7), (3, 8), (4, 8))


def y_in_v_dimension_test(d: int, n: int) -> tuple[int, int, bool]:
    """(dim of non-spanning locus, dim of curve-closure, strict inequality).

    The non-spanning locus is irreducible of dimension nd - n + d; the
    curve-closure has dimension d^2 + 2d + n - 3 (for n >= d + 3). The locus
    can only lie inside the closure when its dimension is strictly smaller,
    and in the proven range that necessary condition is also sufficient.
    """
    if d < 3 or n < d + 4:
        raise ShapeError(f"test applies for d >= 3, n >= d + 4; got ({d}, {n})")
    dim_y = n * d - n + d
    dim_v = d * d + 2 * d + n - 3
    return dim_y, dim_v, dim_y < dim_v


def _unknown_threshold(d: int) -> int:
    """Smallest n >= d + 4 whose non-spanning locus escapes the curve-closure."""
    n = d + 4
    while y_in_v_dimension_test(d, n)[2]:
        n += 1
    return n


def _in_v_annotation(d: int, n: int, degenerate: bool, all_vanish: bool) -> tuple[Union[bool, str], str]:
    if not all_vanish:
        return False, "a nonvanishing generator excludes the configuration"
    if n <= d + 3:
        return True, "with n <= d + 3 every configuration is a curve limit"
    if degenerate:
        if (d, n) in Y_INSIDE_V_PAIRS:
            return True, "non-spanning locus lies inside the curve-closure for this (d, n)"
        return (
            f"unknown (n>={_unknown_threshold(d)})",
            "equations vanish on the whole non-spanning locus, which is not "
            "inside the curve-closure in this range",
        )
    if d == 3 or n == d + 4:
        return True, "equations cut out the curve-closure plus the non-spanning locus"
    return (
        "conjectural",
        "decomposition of the equations' zero locus is conjectural in this range",
    )


def wdn_membership(p: PointConfiguration, collect_values: bool = False):
    """Evaluate every pullback of every generator pattern on p (d >= 3).

    Pullbacks are scanned in lexicographic order of (J, I) — J the point
    subset of size d + 4, I the six-element pattern — and the first nonzero
    value becomes the witness. Returns a HigherEquationReport; when
    `collect_values` is set, also returns the full {(I, J): value} dict.
    """
    d, n = p.d, p.n
    if d < 3:
        raise ShapeError(f"use the conic module for d = {d}")
    degenerate = is_degenerate(p)
    values: dict[tuple[IndexSet, IndexSet], Scalar] = {}
    witness = None
    checked = 0
    if n >= d + 4:
        gens = psi_generators(d)
        mm = MaximalMinors(p.coords)
        if p.field.kind == "Fp":
            mm.ensure_all()
        for J in combinations(range(1, n + 1), d + 4):
            for I, poly in gens:
                val = eval_bracket_poly(relabel(poly, J, ground=n), mm)
                checked += 1
                if collect_values:
                    values[(I, J)] = val
                if val != 0 and witness is None:
                    witness = (I, J, val)
                    if not collect_values:
                        break
            if witness is not None and not collect_values:
                break
    all_vanish = witness is None
    in_v, note = _in_v_annotation(d, n, degenerate, all_vanish)
    if not all_vanish:
        classification = "NotInW"
    elif degenerate:
        classification = "InY"
    else:
        classification = "InW"
    report = HigherEquationReport(
        d=d,
        n=n,
        degenerate=degenerate,
        all_vanish=all_vanish,
        checked=checked,
        witness=witness,
        classification=classification,
        in_v=in_v,
        note=note if n >= d + 4 else "no generators below d + 4 points; " + note,
    )
    if collect_values:
        return report, values
    return report
