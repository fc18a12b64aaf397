"""Hypothesis strategies for monad values shared across test modules."""

from fractions import Fraction

import hypothesis.strategies as st

import effectdiagrams as ed

CARRIER = ("a", "b", "c")
EXC = ed.exception_kind(("err", "crash"))
STATE = ed.state_kind(("l0", "l1"))
OUTPUT = ed.output_kind(("a", "b"))
ALL_KINDS = (ed.MAYBE, EXC, ed.POWERSET, ed.DIST, STATE, OUTPUT)


def kinds():
    return st.sampled_from(ALL_KINDS)


def _dist_values(carrier):
    pair = st.tuples(st.sampled_from(carrier), st.integers(0, 4))
    raw = st.tuples(st.lists(pair, max_size=3), st.integers(0, 4))

    def build(args):
        pairs, slack = args
        total = sum(w for _, w in pairs) + slack
        if total == 0:
            return ed.MonadValue(ed.DIST, {})
        acc = {}
        for x, w in pairs:
            acc[x] = acc.get(x, Fraction(0)) + Fraction(w, total)
        return ed.MonadValue(ed.DIST, acc)

    return raw.map(build)


def _state_values(kind, carrier):
    store_list = ed.stores(kind)
    cell = st.one_of(
        st.none(),
        st.tuples(st.sampled_from(carrier), st.sampled_from(store_list)))

    def build(cells):
        table = {}
        for store, c in zip(store_list, cells):
            if c is None:
                table[store] = ed.DIVERGE
            else:
                table[store] = ed.Present(c)
        return ed.MonadValue(kind, table)

    return st.tuples(*[cell] * len(store_list)).map(build)


def _output_values(kind, carrier):
    word = st.text(alphabet="".join(kind.alphabet), max_size=3)
    tail = st.one_of(st.none(), st.sampled_from(carrier))
    return st.tuples(word, tail).map(
        lambda wt: ed.MonadValue(
            kind, (wt[0],
                   ed.DIVERGE if wt[1] is None else ed.Present(wt[1]))))


def values_for(kind, carrier=CARRIER):
    """Arbitrary elements of one instance over a small fixed carrier."""
    carrier = list(carrier)
    tag = kind.tag
    if tag == "maybe":
        return st.one_of(
            st.just(ed.bottom(kind)),
            st.sampled_from(carrier).map(lambda x: ed.unit(kind, x)))
    if tag == "exc":
        return st.one_of(
            st.just(ed.bottom(kind)),
            st.sampled_from(kind.exceptions).map(
                lambda e: ed.MonadValue(kind, ed.Raised(e))),
            st.sampled_from(carrier).map(lambda x: ed.unit(kind, x)))
    if tag == "set":
        return st.frozensets(st.sampled_from(carrier), max_size=3).map(
            lambda s: ed.MonadValue(kind, s))
    if tag == "dist":
        return _dist_values(carrier)
    if tag == "state":
        return _state_values(kind, carrier)
    if tag == "output":
        return _output_values(kind, carrier)
    raise ValueError(tag)


def kleisli_for(kind, domain=CARRIER, carrier=CARRIER):
    """A random carrier-indexed table of monadic values."""
    domain = list(domain)
    return st.tuples(*[values_for(kind, carrier) for _ in domain]).map(
        lambda vals: dict(zip(domain, vals)))


def kind_and_value():
    return kinds().flatmap(
        lambda k: st.tuples(st.just(k), values_for(k)))


def kind_value_and_kleisli():
    return kinds().flatmap(
        lambda k: st.tuples(st.just(k), values_for(k), kleisli_for(k)))
