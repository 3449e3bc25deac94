"""Finitely generated abelian groups and their characters.

A group is presented by a free rank r and a list of torsion orders
(m_1, ..., m_s); elements are integer vectors of length r + s whose torsion
slots are kept reduced modulo the corresponding order.  A character assigns
an invertible Scalar to each generator, with well-definedness on torsion
generators enforced at construction.
"""

from __future__ import annotations

from .scalars import FieldSpec, Scalar, multiplicative_order


class AbelianGroupSpec:
    def __init__(self, free_rank: int = 0, torsion_orders=()):
        if free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        orders = tuple(int(m) for m in torsion_orders)
        if any(m < 2 for m in orders):
            raise ValueError("torsion orders must be >= 2")
        self.free_rank = free_rank
        self.torsion_orders = orders
        self.num_generators = free_rank + len(orders)

    def __eq__(self, other):
        return (isinstance(other, AbelianGroupSpec)
                and self.free_rank == other.free_rank
                and self.torsion_orders == other.torsion_orders)

    def __hash__(self):
        return hash((self.free_rank, self.torsion_orders))

    def __repr__(self):
        return (f"AbelianGroupSpec(free_rank={self.free_rank}, "
                f"torsion_orders={list(self.torsion_orders)})")

    def identity(self):
        return (0,) * self.num_generators

    def reduce(self, vec):
        vec = tuple(int(x) for x in vec)
        if len(vec) != self.num_generators:
            raise ValueError(
                f"element length {len(vec)} != {self.num_generators} generators")
        r = self.free_rank
        return vec[:r] + tuple(x % m for x, m in
                               zip(vec[r:], self.torsion_orders))

    def multiply(self, a, b):
        return self.reduce(tuple(x + y for x, y in zip(a, b, strict=True)))

    def inverse(self, a):
        return self.reduce(tuple(-x for x in a))

    def power(self, a, k: int):
        return self.reduce(tuple(k * x for x in a))

    def generator(self, i: int):
        if not 0 <= i < self.num_generators:
            raise ValueError(f"no generator {i}")
        return tuple(1 if j == i else 0 for j in range(self.num_generators))

    def is_identity(self, a):
        return self.reduce(a) == self.identity()


class Character:
    """Group homomorphism into the nonzero Scalars, given by its values on
    the generators."""

    def __init__(self, field: FieldSpec, group: AbelianGroupSpec, values):
        values = tuple(field.scalar(v) for v in values)
        if len(values) != group.num_generators:
            raise ValueError(
                f"need {group.num_generators} values, got {len(values)}")
        for idx, v in enumerate(values):
            if v.is_zero():
                raise ValueError(f"character value on generator {idx} is zero")
        for j, m in enumerate(group.torsion_orders):
            v = values[group.free_rank + j]
            order = multiplicative_order(v)
            if order is None or m % order != 0:
                raise ValueError(
                    f"value on torsion generator of order {m} must have "
                    f"multiplicative order dividing {m}; got {v}")
        self.field = field
        self.group = group
        self.values = values

    def __call__(self, element) -> Scalar:
        vec = self.group.reduce(element)
        acc = self.field.one
        for v, e in zip(self.values, vec):
            if e:
                acc = acc * v**e
        return acc

    def __eq__(self, other):
        return (isinstance(other, Character)
                and self.field == other.field
                and self.group == other.group
                and self.values == other.values)

    def __hash__(self):
        return hash((self.field, self.group, self.values))

    def __repr__(self):
        return f"Character({', '.join(str(v) for v in self.values)})"
