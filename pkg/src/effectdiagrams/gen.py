"""Seeded random generators and small exhaustive enumerators.

Everything takes an explicit ``random.Random`` so callers control
determinism.  Distribution weights are exact rationals with bounded
denominators; state tables are total over all stores by construction.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .monads import (DIVERGE, MonadKind, MonadValue, Present, Raised,
                     stores)
from .presentations import GenericEffect, Presentation

LETTERS = ("a", "b", "c", "d", "e")


def random_value(kind: MonadKind, rng: random.Random,
                 carrier: Sequence = LETTERS,
                 max_denominator: int = 16,
                 max_output_len: int = 3) -> MonadValue:
    """A random element of the instance over the given carrier."""
    carrier = list(carrier)
    tag = kind.tag
    if tag == "maybe":
        if not carrier or rng.random() < 0.2:
            return MonadValue(kind, DIVERGE)
        return MonadValue(kind, Present(rng.choice(carrier)))
    if tag == "exc":
        roll = rng.random()
        if roll < 0.2 or not carrier:
            if roll < 0.1:
                return MonadValue(kind, DIVERGE)
            return MonadValue(kind, Raised(rng.choice(kind.exceptions)))
        return MonadValue(kind, Present(rng.choice(carrier)))
    if tag == "set":
        k = rng.randint(0, min(len(carrier), 3))
        return MonadValue(kind, frozenset(rng.sample(carrier, k)))
    if tag == "dist":
        denom = rng.randint(1, max_denominator)
        k = rng.randint(0, min(len(carrier), 3))
        chosen = rng.sample(carrier, k)
        left = denom
        entries = {}
        for x in chosen:
            w = rng.randint(0, left)
            left -= w
            if w:
                entries[x] = Fraction(w, denom)
        return MonadValue(kind, entries)
    if tag == "state":
        all_stores = stores(kind)
        table = {}
        for s in all_stores:
            if not carrier or rng.random() < 0.25:
                table[s] = DIVERGE
            else:
                table[s] = Present((rng.choice(carrier),
                                    rng.choice(all_stores)))
        return MonadValue(kind, table)
    if tag == "output":
        w = "".join(rng.choice(kind.alphabet)
                    for _ in range(rng.randint(0, max_output_len)))
        if not carrier or rng.random() < 0.25:
            return MonadValue(kind, (w, DIVERGE))
        return MonadValue(kind, (w, Present(rng.choice(carrier))))
    raise ValueError(f"unknown monad tag {tag!r}")


def random_effect(kind: MonadKind, rng: random.Random,
                  max_arity: int = 4, arity: Optional[int] = None,
                  max_denominator: int = 16) -> GenericEffect:
    """A random generic effect of bounded arity."""
    n = rng.randint(0, max_arity) if arity is None else arity
    body = random_value(kind, rng, carrier=range(1, n + 1),
                        max_denominator=max_denominator)
    return GenericEffect(n, body)


def random_presentation(kind: MonadKind, rng: random.Random,
                        carrier: Sequence = LETTERS,
                        max_arity: int = 4) -> Presentation:
    """A random presentation; rows may repeat carrier elements."""
    eff = random_effect(kind, rng, max_arity=max_arity)
    row = tuple(rng.choice(list(carrier)) for _ in range(eff.arity))
    return Presentation(eff, row)


def random_kleisli(kind: MonadKind, rng: random.Random,
                   domain: Sequence, codomain: Sequence = LETTERS,
                   **kwargs) -> tuple[Callable, dict]:
    """A random carrier-to-monadic-value map, returned with its table."""
    table = {x: random_value(kind, rng, carrier=codomain, **kwargs)
             for x in domain}
    return (lambda x: table[x]), table


def weaken(nu: MonadValue, rng: random.Random) -> MonadValue:
    """A random value below ``nu`` in the instance order."""
    kind = nu.kind
    tag = kind.tag
    if tag in ("maybe", "exc"):
        return nu if rng.random() < 0.6 else MonadValue(kind, DIVERGE)
    if tag == "set":
        kept = [x for x in nu.payload if rng.random() < 0.6]
        return MonadValue(kind, frozenset(kept))
    if tag == "dist":
        entries = {}
        for x, p in nu.payload.items():
            scale = Fraction(rng.randint(0, 4), 4)
            if scale:
                entries[x] = p * scale
        return MonadValue(kind, entries)
    if tag == "state":
        table = {s: (cell if rng.random() < 0.6 else DIVERGE)
                 for s, cell in nu.payload.items()}
        return MonadValue(kind, table)
    if tag == "output":
        w, tail = nu.payload
        if rng.random() < 0.5:
            return nu
        cut = rng.randint(0, len(w))
        return MonadValue(kind, (w[:cut], DIVERGE))
    raise ValueError(f"unknown monad tag {tag!r}")


def enumerate_values(kind: MonadKind, carrier: Sequence) -> Optional[list]:
    """All values over the carrier, or None when that set is impractical.

    Only the flat instances enumerate; subdistributions, state tables and
    output strings are covered by randomized trials instead.
    """
    carrier = list(carrier)
    tag = kind.tag
    if tag == "maybe":
        vals = [MonadValue(kind, DIVERGE)]
        vals += [MonadValue(kind, Present(x)) for x in carrier]
        return vals
    if tag == "exc":
        vals = [MonadValue(kind, DIVERGE)]
        vals += [MonadValue(kind, Raised(e)) for e in kind.exceptions]
        vals += [MonadValue(kind, Present(x)) for x in carrier]
        return vals
    if tag == "set" and len(carrier) <= 3:
        vals = []
        for k in range(len(carrier) + 1):
            for combo in itertools.combinations(carrier, k):
                vals.append(MonadValue(kind, frozenset(combo)))
        return vals
    return None


def enumerate_kleisli(kind: MonadKind, domain: Sequence,
                      codomain: Sequence) -> Optional[list]:
    """All functions from the domain into enumerable values, as tables."""
    values = enumerate_values(kind, codomain)
    if values is None:
        return None
    domain = list(domain)
    if len(values) ** len(domain) > 256:
        return None
    tables = []
    for picks in itertools.product(values, repeat=len(domain)):
        tables.append(dict(zip(domain, picks)))
    return tables
