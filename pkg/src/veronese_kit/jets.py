"""First-order jets: exact values carrying partial derivatives.

A `Jet` holds a scalar value together with the vector of its partial
derivatives with respect to a fixed set of active variables. Ring operations
propagate derivatives exactly (product and quotient rules), so Jacobians of
polynomial/rational maps come out in exact field arithmetic — no finite
differences anywhere.
"""

from __future__ import annotations

from .fields import Field, require_same_field


class Jet:
    __slots__ = ("field", "value", "partials")

    def __init__(self, field: Field, value, partials):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field.normalize(value))
        object.__setattr__(self, "partials", tuple(field.normalize(x) for x in partials))

    def __setattr__(self, name, value):
        raise AttributeError("Jet is immutable")

    @classmethod
    def constant(cls, field: Field, value, nvars: int) -> "Jet":
        return cls(field, value, (field.zero,) * nvars)

    @classmethod
    def variable(cls, field: Field, value, index: int, nvars: int) -> "Jet":
        """The jet of the `index`-th (0-based) active variable at `value`."""
        p = [field.zero] * nvars
        p[index] = field.one
        return cls(field, value, p)

    @property
    def nvars(self) -> int:
        return len(self.partials)

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            require_same_field(self.field, other.field, "jet operands")
            if other.nvars != self.nvars:
                raise ValueError("jets track different variable counts")
            return other
        return Jet.constant(self.field, other, self.nvars)

    def __add__(self, other):
        o = self._lift(other)
        f = self.field
        return Jet(
            f,
            f.add(self.value, o.value),
            tuple(f.add(a, b) for a, b in zip(self.partials, o.partials)),
        )

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return Jet(f, f.neg(self.value), tuple(f.neg(a) for a in self.partials))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        f = self.field
        return Jet(
            f,
            f.mul(self.value, o.value),
            tuple(
                f.add(f.mul(da, o.value), f.mul(self.value, db))
                for da, db in zip(self.partials, o.partials)
            ),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        f = self.field
        if f.is_zero(o.value):
            raise ZeroDivisionError("jet division by a zero value")
        inv = f.inv(o.value)
        inv2 = f.mul(inv, inv)
        val = f.mul(self.value, inv)
        return Jet(
            f,
            val,
            tuple(
                f.mul(f.sub(f.mul(da, o.value), f.mul(self.value, db)), inv2)
                for da, db in zip(self.partials, o.partials)
            ),
        )

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("jets support nonnegative integer powers only")
        out = Jet.constant(self.field, self.field.one, self.nvars)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Jet)
            and self.field == other.field
            and self.value == other.value
            and self.partials == other.partials
        )

    def __repr__(self):
        return f"Jet({self.value}; d={list(self.partials)})"


def jet_variables(field: Field, values) -> list[Jet]:
    """Jets for a full slate of active variables with the given values."""
    vals = list(values)
    n = len(vals)
    return [Jet.variable(field, v, i, n) for i, v in enumerate(vals)]
