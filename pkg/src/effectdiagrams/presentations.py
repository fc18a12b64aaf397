"""Formal presentations of monadic values.

A presentation splits a monadic value into a generic effect -- an element
of the instance over the index set ``{1, .., n}`` -- and a row of ``n``
carrier elements.  ``interpret`` collapses the pair back into a monadic
value by relabelling indices with row entries; ``decompose`` produces the
canonical minimal presentation of any value.  Two presentations count as
equal exactly when they interpret to the same value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import serialize
from .monads import (KindError, MonadKind, MonadValue, Present, Raised,
                     bottom, canonical_text, leq, map_carrier, support, unit)

MAX_ARITY = 64


class ArityCapError(ValueError):
    """A presentation or composition exceeded the configured arity cap."""


@dataclass
class GenericEffect:
    """The effect part: a monadic value over the index set ``{1, .., n}``."""

    arity: int
    body: MonadValue

    def __post_init__(self):
        if not 0 <= self.arity:
            raise ValueError(f"negative arity {self.arity}")
        if self.arity > MAX_ARITY:
            raise ArityCapError(
                f"arity {self.arity} exceeds the cap of {MAX_ARITY}")
        indices = set(range(1, self.arity + 1))
        if not set(support(self.body)) <= indices:
            raise ValueError(
                f"effect body mentions indices outside 1..{self.arity}")

    @property
    def kind(self) -> MonadKind:
        return self.body.kind


@dataclass
class Presentation:
    """A generic effect paired with a value row of matching length."""

    effect: GenericEffect
    row: tuple

    def __post_init__(self):
        self.row = tuple(self.row)
        if len(self.row) != self.effect.arity:
            raise ValueError(
                f"row length {len(self.row)} does not match "
                f"arity {self.effect.arity}")

    @property
    def kind(self) -> MonadKind:
        return self.effect.kind


def interpret(pres: Presentation) -> MonadValue:
    """Collapse a presentation into the monadic value it denotes."""
    row = pres.row
    return map_carrier(pres.effect.body, lambda i: row[i - 1])


def decompose(mu: MonadValue) -> Presentation:
    """The canonical minimal presentation of a value.

    The row is the support in canonical order, so the result is
    deterministic, duplicate-free and exactly ``interpret``-inverse:
    ``interpret(decompose(mu)) == mu``.
    """
    elems = support(mu)
    index = {x: i + 1 for i, x in enumerate(elems)}
    body = map_carrier(mu, lambda x: index[x])
    return Presentation(GenericEffect(len(elems), body), tuple(elems))


def diagram_eq(xi: Presentation, rho: Presentation) -> bool:
    """Semantic equality: both sides interpret to the same value."""
    if xi.kind != rho.kind:
        raise KindError(
            f"cannot compare {xi.kind.tag} with {rho.kind.tag} presentations")
    return interpret(xi) == interpret(rho)


def diagram_leq(xi: Presentation, rho: Presentation) -> bool:
    """Semantic order: compare the interpretations."""
    if xi.kind != rho.kind:
        raise KindError(
            f"cannot compare {xi.kind.tag} with {rho.kind.tag} presentations")
    return leq(interpret(xi), interpret(rho))


def extend(pres: Presentation, iota: Sequence[int], m: int,
           fill: Sequence) -> Presentation:
    """Widen a presentation along an injection of index sets.

    ``iota`` maps slot ``i`` (1-based) of the old presentation to slot
    ``iota[i-1]`` of the new one; ``fill`` supplies row entries for the
    remaining slots, in increasing position order.  The result always
    interprets to the same value as ``pres``.
    """
    iota = tuple(iota)
    n = pres.effect.arity
    if len(iota) != n:
        raise ValueError(f"injection has {len(iota)} entries, expected {n}")
    if len(set(iota)) != n:
        raise ValueError(f"injection is not injective: {iota!r}")
    if any(not 1 <= t <= m for t in iota):
        raise ValueError(f"injection targets outside 1..{m}: {iota!r}")
    missing = sorted(set(range(1, m + 1)) - set(iota))
    fill = tuple(fill)
    if len(fill) != len(missing):
        raise ValueError(
            f"fill has {len(fill)} entries, expected {len(missing)}")
    body = map_carrier(pres.effect.body, lambda i: iota[i - 1])
    row = [None] * m
    for i, target in enumerate(iota):
        row[target - 1] = pres.row[i]
    for pos, value in zip(missing, fill):
        row[pos - 1] = value
    return Presentation(GenericEffect(m, body), tuple(row))


def _effect_text(eff: GenericEffect) -> str:
    body = eff.body
    kind = eff.kind
    if body == bottom(kind):
        return "⊥"
    if eff.arity == 1 and body == unit(kind, 1):
        return "η"
    tag = kind.tag
    if tag in ("maybe", "exc"):
        payload = body.payload
        if isinstance(payload, Raised):
            return f"raise {payload.label}"
        return f"ret {payload.value}"
    if tag == "set":
        return "{" + ",".join(str(i) for i in sorted(body.payload)) + "}"
    if tag == "dist":
        probs = [body.payload.get(i, Fraction(0))
                 for i in range(1, eff.arity + 1)]
        return ",".join(str(p) for p in probs)
    if tag == "state":
        parts = []
        for store in sorted(body.payload):
            cell = body.payload[store]
            bits = "".join(str(b) for b in store)
            if isinstance(cell, Present):
                i, nxt = cell.value
                parts.append(f"{bits}↦({i},{''.join(str(b) for b in nxt)})")
            else:
                parts.append(f"{bits}↦↑")
        return " , ".join(parts)
    if tag == "output":
        w, tail = body.payload
        shown = w if w else "ε"
        if isinstance(tail, Present):
            return f"({shown},{tail.value})"
        return f"({shown},↑)"
    raise KindError(f"unknown monad tag {tag!r}")


def to_obj(pres: Presentation) -> dict:
    return {"effect": {"arity": pres.effect.arity,
                       "body": serialize.to_obj(pres.effect.body)},
            "row": [serialize.value_to_obj(x) for x in pres.row]}


def from_obj(obj: dict) -> Presentation:
    if not isinstance(obj, dict) or "effect" not in obj or "row" not in obj:
        raise KindError(f"bad serialized presentation: {obj!r}")
    eff = obj["effect"]
    effect = GenericEffect(eff["arity"], serialize.from_obj(eff["body"]))
    return Presentation(
        effect, tuple(serialize.value_from_obj(x) for x in obj["row"]))


def render(pres: Presentation, fmt: str = "text") -> str:
    """Render a presentation.

    ``text`` gives ``[<effect> ‖ 1→x1 ; 2→x2 ; …]``; ``machine`` gives the
    canonical JSON form.  Structurally equal presentations render
    identically.
    """
    if fmt == "machine":
        return json.dumps(to_obj(pres), ensure_ascii=False,
                          separators=(",", ":"))
    if fmt != "text":
        raise ValueError(f"unknown render format {fmt!r}")
    cells = " ; ".join(f"{i + 1}→{canonical_text(x)}"
                       for i, x in enumerate(pres.row))
    return f"[{_effect_text(pres.effect)} ‖ {cells}]"
