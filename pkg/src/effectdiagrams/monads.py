"""Concrete monad instances with algebraic effect operations.

Six instances over arbitrary hashable, canonically orderable carrier
elements:

* ``maybe``  -- possible divergence
* ``exc``    -- exceptions from a fixed finite label set (plus divergence,
                so that a least element exists)
* ``set``    -- finite-powerset nondeterminism
* ``dist``   -- probabilistic nondeterminism as exact-rational
                subdistributions (total mass <= 1)
* ``state``  -- boolean global state over a fixed finite location list
* ``output`` -- a finite printed prefix over a fixed alphabet and a
                converged-or-divergent tail

Values are immutable after construction and every function here is pure,
so values may be shared and used from multiple threads freely.
Probabilities are ``fractions.Fraction`` throughout: equality of values
is always exact, never a float tolerance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

MAX_LOCATIONS = 4

KNOWN_TAGS = ("maybe", "exc", "set", "dist", "state", "output")


class KindError(ValueError):
    """Monad kinds, labels, locations or characters do not line up."""


class ArityError(ValueError):
    """An operation was applied to the wrong number of arguments."""


def canonical_key(x):
    """Total order key across the carrier element types we support.

    Integers sort first, then strings, then tuples (componentwise), then
    anything else by type name and string form.  Used wherever a
    deterministic enumeration of carrier elements is needed.
    """
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(canonical_key(v) for v in x))
    return (3, type(x).__name__, str(x))


def canonical_text(x) -> str:
    """Canonical printed form of a carrier element."""
    return str(x)


@dataclass(frozen=True)
class MonadKind:
    """Which instance a value belongs to, plus its parameters.

    ``exceptions`` is used by ``exc``, ``locations`` by ``state`` and
    ``alphabet`` by ``output``; the parameter tuples must be non-empty
    and duplicate-free where required.
    """

    tag: str
    exceptions: tuple = ()
    locations: tuple = ()
    alphabet: tuple = ()

    def __post_init__(self):
        if self.tag not in KNOWN_TAGS:
            raise KindError(f"unknown monad tag {self.tag!r}")
        for name, params in (("exceptions", self.exceptions),
                             ("locations", self.locations),
                             ("alphabet", self.alphabet)):
            if len(set(params)) != len(params):
                raise KindError(f"duplicate entries in {name}: {params!r}")
        if self.tag == "exc" and not self.exceptions:
            raise KindError("exception monad needs a non-empty label set")
        if self.tag == "state":
            if not self.locations:
                raise KindError("state monad needs a non-empty location list")
            if len(self.locations) > MAX_LOCATIONS:
                raise KindError(
                    f"at most {MAX_LOCATIONS} locations supported, "
                    f"got {len(self.locations)}")
        if self.tag == "output":
            if not self.alphabet:
                raise KindError("output monad needs a non-empty alphabet")
            if any(not (isinstance(c, str) and len(c) == 1)
                   for c in self.alphabet):
                raise KindError("alphabet entries must be single characters")


MAYBE = MonadKind("maybe")
POWERSET = MonadKind("set")
DIST = MonadKind("dist")


def exception_kind(labels: Iterable[str]) -> MonadKind:
    return MonadKind("exc", exceptions=tuple(labels))


def state_kind(locations: Iterable[str]) -> MonadKind:
    return MonadKind("state", locations=tuple(locations))


def output_kind(alphabet: Iterable[str]) -> MonadKind:
    return MonadKind("output", alphabet=tuple(alphabet))


@dataclass(frozen=True)
class Present:
    """A converged result carrying one carrier element."""

    value: Any


@dataclass(frozen=True)
class Raised:
    """An uncaught exception with its label."""

    label: str


@dataclass(frozen=True)
class Diverge:
    """The divergence marker; also the tail of an unfinished output."""


DIVERGE = Diverge()


@dataclass(frozen=True)
class OpDescriptor:
    """A named algebraic operation from one instance's signature.

    ``index`` holds the label for ``raise``, the location for ``read``,
    the ``(location, bit)`` pair for ``write`` and the character for
    ``print``; it is ``None`` for ``union`` and ``choice``.
    """

    name: str
    arity: int
    kind: MonadKind
    index: Any = None


class MonadValue:
    """One element of one monad instance, canonicalised on construction.

    The payload layout depends on ``kind.tag``:

    * maybe:  ``Present(x)`` or ``DIVERGE``
    * exc:    ``Present(x)``, ``Raised(e)`` or ``DIVERGE``
    * set:    a ``frozenset`` of carrier elements
    * dist:   a dict ``{x: Fraction}``, entries positive, mass <= 1
    * state:  a dict from every store (tuple of bits, aligned with
              ``kind.locations``) to ``DIVERGE`` or ``Present((x, store'))``
    * output: a pair ``(w, tail)`` with ``w`` a string over the alphabet
              and ``tail`` either ``Present(x)`` or ``DIVERGE``
    """

    __slots__ = ("kind", "payload")

    def __init__(self, kind: MonadKind, payload):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "payload", _normalise(kind, payload))

    def __setattr__(self, name, value):
        raise AttributeError("MonadValue is immutable")

    def __eq__(self, other):
        if not isinstance(other, MonadValue):
            return NotImplemented
        return self.kind == other.kind and self.payload == other.payload

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self):
        return f"MonadValue({self.kind.tag}, {self.payload!r})"


def _normalise(kind: MonadKind, payload):
    tag = kind.tag
    if tag == "maybe":
        if isinstance(payload, (Present, Diverge)):
            return payload
        raise KindError(f"bad maybe payload: {payload!r}")
    if tag == "exc":
        if isinstance(payload, Raised):
            if payload.label not in kind.exceptions:
                raise KindError(f"unknown exception label {payload.label!r}")
            return payload
        if isinstance(payload, (Present, Diverge)):
            return payload
        raise KindError(f"bad exception payload: {payload!r}")
    if tag == "set":
        return frozenset(payload)
    if tag == "dist":
        entries = {}
        total = Fraction(0)
        for x, p in dict(payload).items():
            p = Fraction(p)
            if p < 0:
                raise KindError(f"negative probability {p} for {x!r}")
            if p == 0:
                continue
            entries[x] = p
            total += p
        if total > 1:
            raise KindError(f"total mass {total} exceeds 1")
        return entries
    if tag == "state":
        table = dict(payload)
        cells = {}
        for store in stores(kind):
            if store not in table:
                raise KindError(f"store {store!r} missing from state table")
            cell = table[store]
            if isinstance(cell, Present):
                x, nxt = cell.value
                nxt = tuple(nxt)
                if len(nxt) != len(kind.locations) or any(
                        b not in (0, 1) for b in nxt):
                    raise KindError(f"bad successor store {nxt!r}")
                cells[store] = Present((x, nxt))
            elif isinstance(cell, Diverge):
                cells[store] = DIVERGE
            else:
                raise KindError(f"bad state cell {cell!r}")
        if len(table) != len(cells):
            raise KindError("state table mentions stores outside the kind")
        return cells
    if tag == "output":
        w, tail = payload
        if not isinstance(w, str) or any(c not in kind.alphabet for c in w):
            raise KindError(f"output string {w!r} not over the alphabet")
        if not isinstance(tail, (Present, Diverge)):
            raise KindError(f"bad output tail {tail!r}")
        return (w, tail)
    raise KindError(f"unknown monad tag {tag!r}")


def stores(kind: MonadKind) -> list[tuple[int, ...]]:
    """All boolean stores of a state kind, in lexicographic order."""
    if kind.tag != "state":
        raise KindError("stores() only applies to the state monad")
    return list(itertools.product((0, 1), repeat=len(kind.locations)))


def unit(kind: MonadKind, x) -> MonadValue:
    """The trivially converging computation returning ``x``."""
    tag = kind.tag
    if tag in ("maybe", "exc"):
        return MonadValue(kind, Present(x))
    if tag == "set":
        return MonadValue(kind, frozenset((x,)))
    if tag == "dist":
        return MonadValue(kind, {x: Fraction(1)})
    if tag == "state":
        return MonadValue(
            kind, {s: Present((x, s)) for s in stores(kind)})
    if tag == "output":
        return MonadValue(kind, ("", Present(x)))
    raise KindError(f"unknown monad tag {tag!r}")


def bottom(kind: MonadKind) -> MonadValue:
    """The least element of the instance order."""
    tag = kind.tag
    if tag in ("maybe", "exc"):
        return MonadValue(kind, DIVERGE)
    if tag == "set":
        return MonadValue(kind, frozenset())
    if tag == "dist":
        return MonadValue(kind, {})
    if tag == "state":
        return MonadValue(kind, {s: DIVERGE for s in stores(kind)})
    if tag == "output":
        return MonadValue(kind, ("", DIVERGE))
    raise KindError(f"unknown monad tag {tag!r}")


def is_bottom(mu: MonadValue) -> bool:
    return mu == bottom(mu.kind)


def _check_result(kind: MonadKind, out: MonadValue) -> MonadValue:
    if not isinstance(out, MonadValue) or out.kind != kind:
        raise KindError("bind continuation produced a value of another kind")
    return out


def bind(mu: MonadValue, f: Callable[[Any], MonadValue]) -> MonadValue:
    """Kleisli extension: run ``mu``, feed each result through ``f``.

    ``f`` must be total on ``support(mu)`` and return values of the same
    kind as ``mu``.
    """
    kind = mu.kind
    tag = kind.tag
    if tag in ("maybe", "exc"):
        if isinstance(mu.payload, Present):
            return _check_result(kind, f(mu.payload.value))
        return mu
    if tag == "set":
        acc = set()
        for x in mu.payload:
            acc |= _check_result(kind, f(x)).payload
        return MonadValue(kind, frozenset(acc))
    if tag == "dist":
        acc: dict = {}
        for x, p in mu.payload.items():
            out = _check_result(kind, f(x))
            for y, q in out.payload.items():
                acc[y] = acc.get(y, Fraction(0)) + p * q
        return MonadValue(kind, acc)
    if tag == "state":
        # f depends only on the carrier element, so share its result
        # across stores; without this, chains of binds fan out per store
        cache: dict = {}
        table = {}
        for store, cell in mu.payload.items():
            if isinstance(cell, Present):
                x, nxt = cell.value
                if x not in cache:
                    cache[x] = _check_result(kind, f(x)).payload
                table[store] = cache[x][nxt]
            else:
                table[store] = DIVERGE
        return MonadValue(kind, table)
    if tag == "output":
        w, tail = mu.payload
        if isinstance(tail, Present):
            u, tail2 = _check_result(kind, f(tail.value)).payload
            return MonadValue(kind, (w + u, tail2))
        return mu
    raise KindError(f"unknown monad tag {tag!r}")


def map_carrier(mu: MonadValue, g: Callable[[Any], Any]) -> MonadValue:
    """Functorial action: relabel every returned carrier element by ``g``."""
    return bind(mu, lambda x: unit(mu.kind, g(x)))


def support(mu: MonadValue) -> list:
    """The smallest carrier subset the value lives over, canonically sorted."""
    tag = mu.kind.tag
    if tag in ("maybe", "exc"):
        if isinstance(mu.payload, Present):
            return [mu.payload.value]
        return []
    if tag == "set":
        return sorted(mu.payload, key=canonical_key)
    if tag == "dist":
        return sorted(mu.payload, key=canonical_key)
    if tag == "state":
        seen = set()
        for cell in mu.payload.values():
            if isinstance(cell, Present):
                seen.add(cell.value[0])
        return sorted(seen, key=canonical_key)
    if tag == "output":
        _, tail = mu.payload
        if isinstance(tail, Present):
            return [tail.value]
        return []
    raise KindError(f"unknown monad tag {tag!r}")


def _cell_leq(a, b) -> bool:
    # Maybe-layer order used inside state tables: DIVERGE below everything,
    # converged cells only below themselves.
    if isinstance(a, Diverge):
        return True
    return a == b


def leq(a: MonadValue, b: MonadValue) -> bool:
    """The instance order.  Both arguments must share one kind."""
    if a.kind != b.kind:
        raise KindError(f"cannot compare {a.kind.tag} with {b.kind.tag}")
    tag = a.kind.tag
    if tag in ("maybe", "exc"):
        return _cell_leq(a.payload, b.payload)
    if tag == "set":
        return a.payload <= b.payload
    if tag == "dist":
        return all(p <= b.payload.get(x, Fraction(0))
                   for x, p in a.payload.items())
    if tag == "state":
        return all(_cell_leq(a.payload[s], b.payload[s])
                   for s in a.payload)
    if tag == "output":
        u, ta = a.payload
        w, tb = b.payload
        if isinstance(ta, Diverge):
            return w.startswith(u)
        return u == w and ta == tb
    raise KindError(f"unknown monad tag {tag!r}")


def mass(mu: MonadValue) -> Fraction:
    """Total probability mass of a subdistribution."""
    if mu.kind.tag != "dist":
        raise KindError("mass() only applies to the dist monad")
    return sum(mu.payload.values(), Fraction(0))


def signature(kind: MonadKind) -> tuple[OpDescriptor, ...]:
    """The effect-triggering operations of an instance."""
    tag = kind.tag
    if tag == "maybe":
        return ()
    if tag == "exc":
        return tuple(OpDescriptor("raise", 0, kind, e)
                     for e in kind.exceptions)
    if tag == "set":
        return (OpDescriptor("union", 2, kind),)
    if tag == "dist":
        return (OpDescriptor("choice", 2, kind),)
    if tag == "state":
        reads = [OpDescriptor("read", 2, kind, loc)
                 for loc in kind.locations]
        writes = [OpDescriptor("write", 1, kind, (loc, b))
                  for loc in kind.locations for b in (0, 1)]
        return tuple(reads + writes)
    if tag == "output":
        return tuple(OpDescriptor("print", 1, kind, c)
                     for c in kind.alphabet)
    raise KindError(f"unknown monad tag {tag!r}")


def op_apply(desc: OpDescriptor, args: Sequence[MonadValue]) -> MonadValue:
    """Apply one signature operation to monadic arguments."""
    if len(args) != desc.arity:
        raise ArityError(
            f"{desc.name} expects {desc.arity} arguments, got {len(args)}")
    kind = desc.kind
    for a in args:
        if a.kind != kind:
            raise KindError(
                f"argument of kind {a.kind.tag} passed to a {kind.tag} op")
    name = desc.name
    if name == "raise":
        if desc.index not in kind.exceptions:
            raise KindError(f"unknown exception label {desc.index!r}")
        return MonadValue(kind, Raised(desc.index))
    if name == "union":
        return MonadValue(kind, args[0].payload | args[1].payload)
    if name == "choice":
        half = Fraction(1, 2)
        acc: dict = {}
        for arg in args:
            for x, p in arg.payload.items():
                acc[x] = acc.get(x, Fraction(0)) + half * p
        return MonadValue(kind, acc)
    if name == "read":
        loc = desc.index
        if loc not in kind.locations:
            raise KindError(f"unknown location {loc!r}")
        i = kind.locations.index(loc)
        return MonadValue(
            kind, {s: args[s[i]].payload[s] for s in stores(kind)})
    if name == "write":
        loc, bit = desc.index
        if loc not in kind.locations or bit not in (0, 1):
            raise KindError(f"bad write index {desc.index!r}")
        i = kind.locations.index(loc)
        table = {}
        for s in stores(kind):
            written = s[:i] + (bit,) + s[i + 1:]
            table[s] = args[0].payload[written]
        return MonadValue(kind, table)
    if name == "print":
        c = desc.index
        if c not in kind.alphabet:
            raise KindError(f"character {c!r} not in the alphabet")
        w, tail = args[0].payload
        return MonadValue(kind, (c + w, tail))
    raise KindError(f"unknown operation {name!r}")
