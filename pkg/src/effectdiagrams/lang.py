r"""A call-by-value lambda calculus with effect operations.

Concrete syntax::

    \x. e                abstraction (body extends as far right as possible)
    e f                  application, left-associative
    union(e, f)          powerset choice        choice(e, f)   fair coin
    raise[l]()           raise exception l      print[c](e)    print c, then e
    read[l](e0, e1)      branch on location l   write[l,b](e)  set l to bit b
    e ; f                run e, discard its value, run f
    (e)                  grouping
    # ...                comment, to end of line

Evaluation is monadic and fuel-bounded: every beta step consumes one
unit of fuel along its path, and running out of fuel yields the bottom
of the chosen instance.  Results are therefore monotone in fuel and
approximate the least semantics from below.  Free variables evaluate to
themselves as inert symbols; only applying one is an error.

Operation arguments and applications evaluate left to right.  Note the
evaluation order inside an operation is a choice this module makes; for
the non-commutative instances (exceptions, state, output) reordering
arguments can change the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .algebra import seq_compose
from .monads import (DIST, KindError, MonadKind, MonadValue, OpDescriptor,
                     POWERSET, bind, bottom, exception_kind, op_apply,
                     output_kind, state_kind, unit)
from .presentations import Presentation, decompose


class ParseError(ValueError):
    """Bad concrete syntax; carries the source offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


class SignatureError(KindError):
    """An operation was used under a monad that does not provide it."""


class EvalError(ValueError):
    """Evaluation got stuck, e.g. a free variable in function position."""


class Term:
    """Base class for syntax nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Abs(Term):
    param: str
    body: Term

    def __str__(self):
        return f"\\{self.param}. {self.body}"


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term

    def __str__(self):
        fn = f"({self.fn})" if isinstance(self.fn, Abs) else str(self.fn)
        arg = f"({self.arg})" if isinstance(self.arg, (Abs, App)) \
            else str(self.arg)
        return f"{fn} {arg}"


@dataclass(frozen=True)
class Op(Term):
    op: OpDescriptor
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) != self.op.arity:
            raise ParseError(
                f"{self.op.name} expects {self.op.arity} arguments, "
                f"got {len(self.args)}", 0)

    def __str__(self):
        name = self.op.name
        if self.op.index is not None:
            idx = self.op.index
            shown = f"{idx[0]},{idx[1]}" if isinstance(idx, tuple) else str(idx)
            name = f"{name}[{shown}]"
        return f"{name}({', '.join(str(a) for a in self.args)})"


def is_value(term: Term) -> bool:
    return isinstance(term, (Var, Abs))


def free_vars(term: Term) -> frozenset:
    if isinstance(term, Var):
        return frozenset((term.name,))
    if isinstance(term, Abs):
        return free_vars(term.body) - {term.param}
    if isinstance(term, App):
        return free_vars(term.fn) | free_vars(term.arg)
    if isinstance(term, Op):
        out = frozenset()
        for a in term.args:
            out |= free_vars(a)
        return out
    raise TypeError(f"not a term: {term!r}")


def is_closed(term: Term) -> bool:
    return not free_vars(term)


def _fresh(base: str, taken: frozenset) -> str:
    k = 1
    while f"{base}_{k}" in taken:
        k += 1
    return f"{base}_{k}"


def substitute(term: Term, name: str, replacement: Term) -> Term:
    """Capture-avoiding substitution of ``replacement`` for free ``name``.

    Bound variables that would capture a free variable of the
    replacement are renamed first.
    """
    fv_repl = free_vars(replacement)

    def go(t: Term) -> Term:
        if isinstance(t, Var):
            return replacement if t.name == name else t
        if isinstance(t, Abs):
            if t.param == name:
                return t
            if t.param in fv_repl and name in free_vars(t.body):
                taken = fv_repl | free_vars(t.body) | {name}
                fresh = _fresh(t.param, taken)
                renamed = substitute(t.body, t.param, Var(fresh))
                return Abs(fresh, go(renamed))
            return Abs(t.param, go(t.body))
        if isinstance(t, App):
            return App(go(t.fn), go(t.arg))
        if isinstance(t, Op):
            return Op(t.op, tuple(go(a) for a in t.args))
        raise TypeError(f"not a term: {t!r}")

    return go(term)


# name -> (monad tag, arity, number of bracket indices)
OP_FAMILIES = {
    "raise": ("exc", 0, 1),
    "union": ("set", 2, 0),
    "choice": ("dist", 2, 0),
    "read": ("state", 2, 1),
    "write": ("state", 1, 2),
    "print": ("output", 1, 1),
}


def _op_descriptor(name: str, indices: list, kind: Optional[MonadKind],
                   pos: int) -> OpDescriptor:
    tag, arity, n_idx = OP_FAMILIES[name]
    if len(indices) != n_idx:
        raise ParseError(
            f"{name} takes {n_idx} bracket indices, got {len(indices)}", pos)
    if name == "write":
        loc, bit = indices
        if bit not in (0, 1):
            raise ParseError(f"write bit must be 0 or 1, got {bit!r}", pos)
        index = (loc, bit)
    elif n_idx == 1:
        index = indices[0]
    else:
        index = None
    if kind is None:
        inferred = {
            "exc": lambda: exception_kind((index,)),
            "set": lambda: POWERSET,
            "dist": lambda: DIST,
            "state": lambda: state_kind(
                (index,) if name == "read" else (index[0],)),
            "output": lambda: output_kind((index,)),
        }[tag]()
        return OpDescriptor(name, arity, inferred, index)
    if kind.tag != tag:
        raise SignatureError(
            f"operation {name!r} is not in the {kind.tag} signature")
    desc = OpDescriptor(name, arity, kind, index)
    _validate_index(desc)
    return desc


def _validate_index(desc: OpDescriptor) -> None:
    kind, index = desc.kind, desc.index
    if desc.name == "raise" and index not in kind.exceptions:
        raise SignatureError(f"unknown exception label {index!r}")
    if desc.name == "read" and index not in kind.locations:
        raise SignatureError(f"unknown location {index!r}")
    if desc.name == "write" and index[0] not in kind.locations:
        raise SignatureError(f"unknown location {index[0]!r}")
    if desc.name == "print" and index not in kind.alphabet:
        raise SignatureError(f"character {index!r} not in the alphabet")


def resolve_op(desc: OpDescriptor, kind: MonadKind) -> OpDescriptor:
    """Rebind a parsed descriptor to the active monad, or refuse."""
    if desc.kind == kind:
        return desc
    if desc.kind.tag != kind.tag:
        raise SignatureError(
            f"operation {desc.name!r} is not in the {kind.tag} signature")
    rebound = OpDescriptor(desc.name, desc.arity, kind, desc.index)
    _validate_index(rebound)
    return rebound


_PUNCT = "\\.()[],;"


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c in " \t\r\n":
            i += 1
        elif c == "#":
            while i < n and src[i] != "\n":
                i += 1
        elif c in _PUNCT:
            tokens.append(("punct", c, i))
            i += 1
        elif c.isdigit():
            start = i
            while i < n and src[i].isdigit():
                i += 1
            tokens.append(("number", src[start:i], start))
        elif c.isalpha() or c == "_":
            start = i
            while i < n and (src[i].isalnum() or src[i] in "_'"):
                i += 1
            tokens.append(("ident", src[start:i], start))
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, src: str, kind: Optional[MonadKind]):
        self.tokens = _tokenize(src)
        self.pos = 0
        self.kind = kind

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, punct: str):
        typ, text, pos = self.next()
        if typ != "punct" or text != punct:
            raise ParseError(f"expected {punct!r}, found {text!r}", pos)

    def parse_program(self) -> Term:
        term = self.parse_seq()
        typ, text, pos = self.peek()
        if typ != "eof":
            raise ParseError(f"trailing input starting at {text!r}", pos)
        return term

    def parse_seq(self) -> Term:
        left = self.parse_app()
        typ, text, _ = self.peek()
        if typ == "punct" and text == ";":
            self.next()
            right = self.parse_seq()
            ignored = "_" if "_" not in free_vars(right) \
                else _fresh("_", free_vars(right))
            return App(Abs(ignored, right), left)
        return left

    def _starts_atom(self) -> bool:
        typ, text, _ = self.peek()
        return typ == "ident" or (typ == "punct" and text in "\\(")

    def parse_app(self) -> Term:
        typ, text, pos = self.peek()
        if not self._starts_atom():
            raise ParseError(f"expected a term, found {text or 'end'!r}", pos)
        term = self.parse_atom()
        while self._starts_atom():
            term = App(term, self.parse_atom())
        return term

    def parse_atom(self) -> Term:
        typ, text, pos = self.next()
        if typ == "punct" and text == "\\":
            vtyp, vname, vpos = self.next()
            if vtyp != "ident":
                raise ParseError("expected a variable after '\\'", vpos)
            self.expect(".")
            return Abs(vname, self.parse_seq())
        if typ == "punct" and text == "(":
            inner = self.parse_seq()
            self.expect(")")
            return inner
        if typ == "ident":
            if text in OP_FAMILIES:
                return self.parse_op(text, pos)
            return Var(text)
        raise ParseError(f"unexpected token {text!r}", pos)

    def parse_op(self, name: str, pos: int) -> Term:
        indices = []
        typ, text, _ = self.peek()
        if typ == "punct" and text == "[":
            self.next()
            while True:
                ityp, itext, ipos = self.next()
                if ityp == "ident":
                    indices.append(itext)
                elif ityp == "number":
                    indices.append(int(itext))
                else:
                    raise ParseError(f"bad index {itext!r}", ipos)
                ttyp, ttext, tpos = self.next()
                if ttyp == "punct" and ttext == "]":
                    break
                if not (ttyp == "punct" and ttext == ","):
                    raise ParseError("expected ',' or ']' in index list",
                                     tpos)
        desc = _op_descriptor(name, indices, self.kind, pos)
        self.expect("(")
        args = []
        typ, text, _ = self.peek()
        if not (typ == "punct" and text == ")"):
            args.append(self.parse_seq())
            while True:
                typ, text, tpos = self.peek()
                if typ == "punct" and text == ",":
                    self.next()
                    args.append(self.parse_seq())
                else:
                    break
        self.expect(")")
        if len(args) != desc.arity:
            raise ParseError(
                f"{name} expects {desc.arity} arguments, got {len(args)}",
                pos)
        return Op(desc, tuple(args))


def parse(src: str, kind: Optional[MonadKind] = None,
          defs: Optional[Mapping[str, Term]] = None) -> Term:
    """Parse a program.

    When ``kind`` is given, operations are checked against its signature
    (a mismatch raises SignatureError); otherwise each operation is bound
    to a minimal inferred kind and rechecked at evaluation time.  Free
    identifiers named in ``defs`` are replaced by their definitions.
    """
    term = _Parser(src, kind).parse_program()
    if defs:
        for name, repl in defs.items():
            if name in free_vars(term):
                term = substitute(term, name, repl)
    return term


def evaluate(term: Term, kind: MonadKind, fuel: int) -> MonadValue:
    """The fuel-indexed approximation of the monadic semantics.

    Values map to unit, operations apply their instance semantics over
    the evaluated arguments, and each beta step spends one fuel unit;
    spent fuel yields the instance bottom.  For any k <= k' the result
    at k is below the result at k' in the instance order.
    """
    if fuel < 0:
        raise ValueError("fuel must be >= 0")
    return _eval(term, kind, fuel)


def _eval(t: Term, kind: MonadKind, fuel: int):
    if isinstance(t, (Var, Abs)):
        return unit(kind, t)
    if isinstance(t, App):
        mf = _eval(t.fn, kind, fuel)
        ma = _eval(t.arg, kind, fuel)
        return bind(mf, lambda vf: bind(
            ma, lambda va: _beta(vf, va, kind, fuel)))
    if isinstance(t, Op):
        desc = resolve_op(t.op, kind)
        return op_apply(desc, [_eval(a, kind, fuel) for a in t.args])
    raise EvalError(f"not a term: {t!r}")


def _beta(vf: Term, va: Term, kind: MonadKind, fuel: int):
    if not isinstance(vf, Abs):
        raise EvalError(
            f"cannot apply {vf!s}: free variables are inert symbols")
    if fuel == 0:
        return bottom(kind)
    return _eval(substitute(vf.body, vf.param, va), kind, fuel - 1)


def eval_diagram(term: Term, kind: MonadKind, fuel: int) -> Presentation:
    """Evaluate, then split the result into effect and value row."""
    return decompose(evaluate(term, kind, fuel))


def eval_monadic_term(pres: Presentation, kind: MonadKind,
                      fuel: int) -> Presentation:
    """Extend evaluation to a presentation whose row holds programs.

    Each row term is evaluated to its own diagram and the diagrams are
    composed under the original effect.  The result only depends on what
    the input presentation denotes, not on the representative chosen.
    """
    family = [eval_diagram(e, kind, fuel) for e in pres.row]
    return seq_compose(pres, family)


DEFAULT_PRELUDE = """\
# Call-by-value fixpoint combinator and Church numeral helpers.
id = \\x. x
OMEGA = (\\x. x x) (\\x. x x)
Z = \\f. (\\x. f (\\v. x x v)) (\\x. f (\\v. x x v))
zero = \\s. \\z. z
succ = \\n. \\s. \\z. s (n s z)
one = succ zero
two = succ one
three = succ two
"""


def parse_defs(src: str, kind: Optional[MonadKind] = None) -> dict:
    """Parse a prelude: one ``name = term`` per line, '#' comments.

    Later definitions may use earlier ones.
    """
    defs: dict = {}
    for raw in src.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, eq, rhs = line.partition("=")
        name = name.strip()
        if not eq or not name.isidentifier():
            raise ParseError(f"bad definition line: {raw!r}", 0)
        if name in OP_FAMILIES:
            raise ParseError(f"{name!r} is a reserved operation name", 0)
        defs[name] = parse(rhs, kind=kind, defs=defs)
    return defs


def default_defs(kind: Optional[MonadKind] = None) -> dict:
    return parse_defs(DEFAULT_PRELUDE, kind=kind)
