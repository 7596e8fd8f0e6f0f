"""Burst-mode asynchronous FSM controlling the comparators and the register.

Two independent descriptions of the same controller live here:

* the synthesized feedback-output equations (:data:`EQUATIONS`), evaluated
  by :func:`afsm_eval` with REQ and SEL fed back as state, and
* the four-state burst graph (:data:`ARCS`), interpreted by :func:`graph_step`.

:func:`check_equivalence` enumerates burst sequences of the graph and checks
the equations against every arc, under every arrival order of the inputs in
a burst.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field, replace

INPUTS = ("inc", "dec", "ack")
OUTPUTS = ("on", "req", "sel", "l")


@dataclass(frozen=True)
class AfsmSignals:
    inc: int = 0
    dec: int = 0
    ack: int = 0
    on: int = 0
    req: int = 0
    sel: int = 0
    l: int = 0

    def outputs(self) -> tuple[int, int, int, int]:
        return self.on, self.req, self.sel, self.l


TRACKING = AfsmSignals(on=1)


# An equation is a sum of products, optionally complemented as a whole.
# Literals are (signal, positive).
@dataclass(frozen=True)
class Equation:
    output: str
    terms: tuple[tuple[tuple[str, bool], ...], ...]
    inverted: bool = False

    def evaluate(self, values: dict) -> int:
        s = any(all(values[name] == (1 if pos else 0) for name, pos in term) for term in self.terms)
        return int(s != self.inverted)

    def __str__(self):
        def lit(name, pos):
            return name.upper() if pos else "~" + name.upper()

        sop = " + ".join(".".join(lit(*x) for x in term) for term in self.terms) or "0"
        return f"{self.output.upper()} = " + (f"~({sop})" if self.inverted else sop)


EQUATIONS: tuple[Equation, ...] = (
    Equation("req", ((("inc", True),), (("dec", True),), (("ack", False), ("req", True)))),
    Equation("on", ((("inc", True),), (("dec", True),), (("ack", True),), (("req", True),)), inverted=True),
    Equation("sel", ((("dec", True),), (("ack", False), ("sel", True)))),
    Equation("l", ((("inc", False), ("dec", False), ("ack", True)),)),
)

MAX_PASSES = 8


class AfsmError(RuntimeError):
    pass


def settle(prev: AfsmSignals, inc: int, dec: int, ack: int, equations=EQUATIONS):
    """Apply new inputs and re-evaluate all outputs simultaneously until stable.

    Returns ``(signals, passes)`` where ``passes`` counts evaluation rounds
    that changed at least one output.
    """
    values = {"inc": int(inc), "dec": int(dec), "ack": int(ack),
              "on": prev.on, "req": prev.req, "sel": prev.sel, "l": prev.l}
    for passes in range(MAX_PASSES + 1):
        new = {eq.output: eq.evaluate(values) for eq in equations}
        if all(values[k] == v for k, v in new.items()):
            return AfsmSignals(**values), passes
        values.update(new)
    raise AfsmError(f"equations did not settle within {MAX_PASSES} passes")


def afsm_eval(prev: AfsmSignals, inc: int, dec: int, ack: int, equations=EQUATIONS) -> AfsmSignals:
    """Next stable configuration after the inputs change to ``(inc, dec, ack)``."""
    return settle(prev, inc, dec, ack, equations)[0]


class AfsmState(enum.Enum):
    S0 = 0
    S1 = 1
    S2 = 2
    S3 = 3


def _tr(*names: str) -> frozenset:
    return frozenset(names)


# (state, input burst) -> (next state, output burst)
ARCS: dict = {
    (AfsmState.S0, _tr("INC+")): (AfsmState.S2, _tr("ON-", "REQ+")),
    (AfsmState.S0, _tr("DEC+")): (AfsmState.S1, _tr("ON-", "REQ+", "SEL+")),
    (AfsmState.S2, _tr("INC-", "ACK+")): (AfsmState.S3, _tr("REQ-", "L+")),
    (AfsmState.S1, _tr("DEC-", "ACK+")): (AfsmState.S3, _tr("REQ-", "L+", "SEL-")),
    (AfsmState.S3, _tr("ACK-")): (AfsmState.S0, _tr("L-", "ON+")),
}

# Entry configuration of each state (inputs and outputs).
STATE_SIGNALS = {
    AfsmState.S0: TRACKING,
    AfsmState.S1: AfsmSignals(dec=1, req=1, sel=1),
    AfsmState.S2: AfsmSignals(inc=1, req=1),
    AfsmState.S3: AfsmSignals(ack=1, l=1),
}


def parse_transition(tr: str) -> tuple[str, int]:
    """``"ACK+"`` -> ``("ack", 1)``."""
    name, sign = tr[:-1].lower(), tr[-1]
    if name not in INPUTS + OUTPUTS or sign not in "+-":
        raise ValueError(f"bad transition {tr!r}")
    return name, 1 if sign == "+" else 0


def graph_step(state: AfsmState, burst) -> tuple[AfsmState, frozenset]:
    """Follow the arc labelled ``burst`` (e.g. ``{"INC-", "ACK+"}``) out of ``state``."""
    key = (state, frozenset(s.upper() for s in ([burst] if isinstance(burst, str) else burst)))
    try:
        return ARCS[key]
    except KeyError:
        raise ValueError(f"burst {sorted(key[1])} not enabled in {state.name}") from None


def enabled_bursts(state: AfsmState) -> list[frozenset]:
    return sorted((b for s, b in ARCS if s is state), key=sorted)


def apply_transitions(sig: AfsmSignals, transitions) -> AfsmSignals:
    return replace(sig, **dict(parse_transition(t) for t in transitions))


@dataclass
class Counterexample:
    path: tuple
    arc: tuple[str, str]
    order: tuple[str, ...]
    reason: str

    def __str__(self):
        steps = " ; ".join("{" + ",".join(sorted(b)) + "}" for b in self.path)
        return (f"arc {self.arc[0]}->{self.arc[1]} (input order {', '.join(self.order)}): "
                f"{self.reason} [path: {steps}]")


@dataclass
class EquivalenceReport:
    ok: bool
    max_depth: int
    paths_checked: int
    arcs_checked: int
    counterexample: Counterexample | None = None
    equations: tuple = field(default=EQUATIONS, repr=False)

    def __str__(self):
        lines = [str(eq) for eq in self.equations]
        lines.append(f"depth {self.max_depth}: {self.paths_checked} burst sequences, "
                     f"{self.arcs_checked} arc traversals")
        lines.append("equivalent: yes" if self.ok else f"equivalent: NO\n  {self.counterexample}")
        return "\n".join(lines)


def _check_arc(sig: AfsmSignals, burst: frozenset, out_burst: frozenset, equations):
    """Check one arc under every input arrival order. Returns (order, reason) on failure."""
    target = apply_transitions(sig, burst | out_burst)
    for order in itertools.permutations(sorted(burst)):
        cur = sig
        for k, tr in enumerate(order):
            ins = replace(cur, **dict([parse_transition(tr)]))
            try:
                nxt, passes = settle(cur, ins.inc, ins.dec, ins.ack, equations)
            except AfsmError as exc:
                return order, str(exc)
            if k < len(order) - 1:
                if nxt.outputs() != cur.outputs():
                    return order, f"outputs changed before the burst completed (after {tr})"
            else:
                if nxt != target:
                    got = {o: getattr(nxt, o) for o in OUTPUTS}
                    want = {o: getattr(target, o) for o in OUTPUTS}
                    return order, f"outputs {got}, expected {want}"
                if passes > 1:
                    return order, f"output burst took {passes} evaluation passes"
            cur = nxt
    return None


def check_equivalence(max_depth: int = 6, equations=EQUATIONS) -> EquivalenceReport:
    """Exhaustively compare the equations with the burst graph up to ``max_depth`` arcs."""
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    start = STATE_SIGNALS[AfsmState.S0]
    report = EquivalenceReport(ok=True, max_depth=max_depth, paths_checked=0, arcs_checked=0,
                               equations=tuple(equations))
    # the reset configuration must itself be stable
    try:
        idle, passes = settle(start, 0, 0, 0, equations)
    except AfsmError as exc:
        idle, passes = None, str(exc)
    if idle != start:
        report.ok = False
        report.counterexample = Counterexample((), ("S0", "S0"), (), "tracking state is not stable")
        return report

    stack = [(AfsmState.S0, start, ())]
    while stack:
        state, sig, path = stack.pop()
        for burst in reversed(enabled_bursts(state)):
            nxt_state, out_burst = graph_step(state, burst)
            report.arcs_checked += 1
            fail = _check_arc(sig, burst, out_burst, equations)
            if fail is not None:
                report.ok = False
                report.counterexample = Counterexample(
                    path + (burst,), (state.name, nxt_state.name), fail[0], fail[1])
                return report
            new_path = path + (burst,)
            if len(new_path) < max_depth:
                stack.append((nxt_state, apply_transitions(sig, burst | out_burst), new_path))
            else:
                report.paths_checked += 1
    return report


def single_literal_mutations(equations=EQUATIONS):
    """Yield ``(description, mutated_equations)`` for every one-literal change.

    Each literal occurrence is either complemented or deleted (a product left
    empty is dropped from its sum).
    """
    for ei, eq in enumerate(equations):
        for ti, term in enumerate(eq.terms):
            for li, (name, pos) in enumerate(term):
                lit = name.upper() if pos else "~" + name.upper()
                flipped = term[:li] + ((name, not pos),) + term[li + 1:]
                yield (f"{eq.output.upper()}: complement {lit} in term {ti}",
                       _swap(equations, ei, replace(eq, terms=eq.terms[:ti] + (flipped,) + eq.terms[ti + 1:])))
                dropped = term[:li] + term[li + 1:]
                terms = eq.terms[:ti] + ((dropped,) if dropped else ()) + eq.terms[ti + 1:]
                yield (f"{eq.output.upper()}: delete {lit} from term {ti}",
                       _swap(equations, ei, replace(eq, terms=terms)))


def _swap(equations, i, eq):
    return tuple(equations[:i]) + (eq,) + tuple(equations[i + 1:])


def drop_term(equations, output: str, term_index: int):
    """Equations with one product term removed from ``output``'s sum."""
    out = []
    for eq in equations:
        if eq.output == output:
            eq = replace(eq, terms=eq.terms[:term_index] + eq.terms[term_index + 1:])
        out.append(eq)
    return tuple(out)
