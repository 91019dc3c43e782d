"""Local-realism satisfiability checker over dichotomic value assignments.

Quantum facts with probability exactly 0 or 1 become logical constraints
over 0/1 hidden-variable assignments: probability-1 conditionals become
implications, probability-0 joints become exclusions, and strictly
positive joints become events that must be realized by at least one
admissible assignment.  Instances are tiny (<= 20 variables), so the
checker enumerates every assignment and a paradox verdict comes with a
replayable forced chain.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import gedanken, hardy4, qcore
from .errors import InvalidParameterError

MAX_VARIABLES = 20
# A probability must be within this of 0 or 1 to become a logical constraint.
GATE_TOL = 1e-10

Literal = tuple[str, bool]


def _fmt_literal(lit: Literal) -> str:
    name, value = lit
    return f"{name}=1" if value else f"{name}=0"


@dataclass(frozen=True)
class Implication:
    cid: str
    antecedents: tuple[Literal, ...]
    consequent: Literal


@dataclass(frozen=True)
class Exclusion:
    cid: str
    literals: tuple[Literal, ...]


@dataclass(frozen=True)
class RequiredEvent:
    cid: str
    literals: tuple[Literal, ...]


@dataclass(frozen=True)
class ConstraintSystem:
    variables: tuple[str, ...]
    implications: tuple[Implication, ...] = ()
    exclusions: tuple[Exclusion, ...] = ()
    required_positive: tuple[RequiredEvent, ...] = ()

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise InvalidParameterError("variable names must be unique")
        if len(self.variables) > MAX_VARIABLES:
            raise InvalidParameterError(f"at most {MAX_VARIABLES} variables supported")
        declared = set(self.variables)
        for group in (self.implications, self.exclusions, self.required_positive):
            for item in group:
                lits = (item.literals if hasattr(item, "literals")
                        else item.antecedents + (item.consequent,))
                for name, _ in lits:
                    if name not in declared:
                        raise InvalidParameterError(
                            f"constraint {item.cid!r} references undeclared variable {name!r}"
                        )

    def to_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "implications": [
                {"id": c.cid,
                 "if": [_fmt_literal(l) for l in c.antecedents],
                 "then": _fmt_literal(c.consequent)}
                for c in self.implications
            ],
            "exclusions": [
                {"id": c.cid, "forbid": [_fmt_literal(l) for l in c.literals]}
                for c in self.exclusions
            ],
            "required_positive": [
                {"id": c.cid, "event": [_fmt_literal(l) for l in c.literals]}
                for c in self.required_positive
            ],
        }


@dataclass(frozen=True)
class ChainStep:
    literal: Literal
    constraint_id: str


@dataclass(frozen=True)
class Certificate:
    status: str  # "satisfiable" | "paradox"
    witness: dict = field(default_factory=dict)  # event id -> satisfying assignment
    failing_event: str | None = None
    forced_chain: tuple[ChainStep, ...] = ()
    violated_constraint: str | None = None

    def to_dict(self) -> dict:
        out = {"status": self.status}
        if self.status == "satisfiable":
            out["witness"] = {k: dict(v) for k, v in self.witness.items()}
        else:
            out["failing_event"] = self.failing_event
            out["forced_chain"] = [
                {"literal": _fmt_literal(s.literal), "by": s.constraint_id}
                for s in self.forced_chain
            ]
            out["violated_constraint"] = self.violated_constraint
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _assignments(n: int, order: str):
    if order == "index":
        for idx in range(1 << n):
            yield idx
    elif order == "gray":
        for idx in range(1 << n):
            yield idx ^ (idx >> 1)
    else:
        raise InvalidParameterError(f"unknown enumeration order {order!r}")


def _admissible(system: ConstraintSystem, assign: dict[str, bool]) -> bool:
    for imp in system.implications:
        if all(assign[n] == v for n, v in imp.antecedents):
            cn, cv = imp.consequent
            if assign[cn] != cv:
                return False
    for exc in system.exclusions:
        if all(assign[n] == v for n, v in exc.literals):
            return False
    return True


def _forced_chain(system: ConstraintSystem, event: RequiredEvent):
    """Unit propagation from the event literals to a violated constraint.

    Returns (chain, violated_cid); chain steps seeded by the event itself
    carry the event id.  Propagates to closure before reporting the first
    violated exclusion, so the chain shows every forced value.
    """
    known: dict[str, bool] = {}
    chain: list[ChainStep] = []
    for lit in event.literals:
        known[lit[0]] = lit[1]
        chain.append(ChainStep(literal=lit, constraint_id=event.cid))
    changed = True
    while changed:
        changed = False
        for imp in system.implications:
            if not all(known.get(n) == v for n, v in imp.antecedents):
                continue
            cn, cv = imp.consequent
            if cn in known:
                if known[cn] != cv:
                    chain.append(ChainStep(literal=imp.consequent, constraint_id=imp.cid))
                    return tuple(chain), imp.cid
                continue
            known[cn] = cv
            chain.append(ChainStep(literal=imp.consequent, constraint_id=imp.cid))
            changed = True
    for exc in system.exclusions:
        if all(known.get(n) == v for n, v in exc.literals):
            return tuple(chain), exc.cid
    return tuple(chain), None


def check(system: ConstraintSystem, order: str = "index") -> Certificate:
    """Exhaustive verdict: is every required-positive event realizable?"""
    names = system.variables
    n = len(names)
    witness: dict[str, dict[str, bool]] = {}
    any_admissible: dict[str, bool] | None = None
    pending = {ev.cid: ev for ev in system.required_positive}
    for idx in _assignments(n, order):
        assign = {name: bool((idx >> i) & 1) for i, name in enumerate(names)}
        if not _admissible(system, assign):
            continue
        if any_admissible is None:
            any_admissible = assign
        for cid in [c for c, ev in pending.items()
                    if all(assign[m] == v for m, v in ev.literals)]:
            witness[cid] = assign
            del pending[cid]
        if not pending and not system.required_positive:
            break
    if pending:
        event = next(iter(pending.values()))
        chain, violated = _forced_chain(system, event)
        return Certificate(status="paradox", failing_event=event.cid,
                           forced_chain=chain, violated_constraint=violated)
    if not system.required_positive and any_admissible is not None:
        witness["any"] = any_admissible
    return Certificate(status="satisfiable", witness=witness)


def replay(system: ConstraintSystem, cert: Certificate) -> bool:
    """Independently validate a paradox certificate's forced chain.

    Each step must be licensed by the named constraint given the
    literals established so far, and the terminal constraint must be
    violated by the accumulated assignment.
    """
    if cert.status != "paradox":
        return False
    constraints = {c.cid: c for c in system.implications}
    constraints.update({c.cid: c for c in system.exclusions})
    events = {c.cid: c for c in system.required_positive}
    known: dict[str, bool] = {}
    for step in cert.forced_chain:
        name, value = step.literal
        if step.constraint_id in events:
            ev = events[step.constraint_id]
            if step.literal not in ev.literals:
                return False
        elif step.constraint_id in constraints:
            imp = constraints[step.constraint_id]
            if not isinstance(imp, Implication):
                return False
            if not all(known.get(a) == v for a, v in imp.antecedents):
                return False
            if imp.consequent != step.literal:
                return False
        else:
            return False
        if name in known and known[name] != value:
            # the chain itself exposes the contradiction
            return cert.violated_constraint == step.constraint_id
        known[name] = value
    violated = cert.violated_constraint
    if violated is None:
        # fallback certificate: verify exhaustively that the event is unrealizable
        event = events.get(cert.failing_event)
        if event is None:
            return False
        n = len(system.variables)
        for idx in range(1 << n):
            assign = {nm: bool((idx >> i) & 1) for i, nm in enumerate(system.variables)}
            if _admissible(system, assign) and all(assign[m] == v for m, v in event.literals):
                return False
        return True
    if violated in constraints and isinstance(constraints[violated], Exclusion):
        return all(known.get(nm) == v for nm, v in constraints[violated].literals)
    if violated in constraints and isinstance(constraints[violated], Implication):
        imp = constraints[violated]
        return (all(known.get(a) == v for a, v in imp.antecedents)
                and known.get(imp.consequent[0]) is not None)
    return False


def derive_two_step(system: ConstraintSystem) -> list[Implication]:
    """Resolve pairwise exclusions against probability-1 implications.

    From an exclusion forbidding X=1 & Y=1 and an implication A -> X=1,
    derive A -> Y=0.  Applied to the four-variable system this yields
    D1 -> U1=0 and D2 -> U2=0; without the exclusion the derivation is
    empty.
    """
    derived: list[Implication] = []
    seen = set()
    for exc in system.exclusions:
        if len(exc.literals) != 2 or not all(v for _, v in exc.literals):
            continue
        for imp in system.implications:
            cx, cv = imp.consequent
            if not cv:
                continue
            for (xn, _), (yn, _) in ((exc.literals[0], exc.literals[1]),
                                     (exc.literals[1], exc.literals[0])):
                if cx != xn:
                    continue
                new = Implication(cid=f"derived:{imp.cid}&{exc.cid}",
                                  antecedents=imp.antecedents,
                                  consequent=(yn, False))
                key = (new.antecedents, new.consequent)
                if key not in seen and new.consequent not in new.antecedents:
                    seen.add(key)
                    derived.append(new)
    return derived


def _gate(value: float, target: float, cid: str) -> None:
    if abs(value - target) > GATE_TOL:
        raise InvalidParameterError(
            f"constraint {cid!r} not quantum-justified: value {value!r} vs target {target!r}"
        )


def hardy_system(alpha: float) -> ConstraintSystem:
    """Constraint encoding of the two-qubit model at the given alpha.

    Every constraint is inserted only after the corresponding quantum
    probability is verified to be exactly 0 or 1 (within GATE_TOL); the
    required-positive joint event is present only when its quantum
    probability is strictly positive (alpha != beta).
    """
    model = hardy4.build_model(alpha)
    metrics = hardy4.compute_metrics(model)
    _gate(metrics.p_cond_U2_given_D1, 1.0, "P(U2|D1)=1")
    _gate(metrics.p_cond_U1_given_D2, 1.0, "P(U1|D2)=1")
    _gate(metrics.p_joint_U1U2, 0.0, "<U1U2>=0")
    required = ()
    if metrics.p_joint_D1D2 > GATE_TOL:
        required = (RequiredEvent(cid="<D1D2>>0",
                                  literals=(("D1", True), ("D2", True))),)
    return ConstraintSystem(
        variables=("D1", "D2", "U1", "U2"),
        implications=(
            Implication(cid="P(U2|D1)=1", antecedents=(("D1", True),), consequent=("U2", True)),
            Implication(cid="P(U1|D2)=1", antecedents=(("D2", True),), consequent=("U1", True)),
        ),
        exclusions=(Exclusion(cid="<U1U2>=0", literals=(("U1", True), ("U2", True))),),
        required_positive=required,
    )


def gedanken_system() -> ConstraintSystem:
    """Constraint encoding of the thought-experiment detector relations."""
    psi = gedanken.build_state()
    det = gedanken.build_detectors()
    joint_cc = qcore.born_probability(
        psi, qcore.Projector(det.c_plus_inf.matrix @ det.c_minus_inf.matrix))
    _gate(joint_cc, 0.0, "<C+inf C-inf>=0")
    _gate(qcore.conditional_probability(psi, det.c_plus_inf, det.d_minus_inf), 1.0,
          "P(D-inf|C+inf)=1")
    _gate(qcore.conditional_probability(psi, det.c_minus_inf, det.d_plus_inf), 1.0,
          "P(D+inf|C-inf)=1")
    _gate(qcore.conditional_probability(psi, det.d_minus_0, det.c_plus_inf), 1.0,
          "P(C+inf|D-0)=1")
    _gate(qcore.conditional_probability(psi, det.d_plus_0, det.c_minus_inf), 1.0,
          "P(C-inf|D+0)=1")
    joint_dd0 = qcore.born_probability(
        psi, qcore.Projector(det.d_plus_0.matrix @ det.d_minus_0.matrix))
    if joint_dd0 <= GATE_TOL:
        raise InvalidParameterError("<D+0 D-0> unexpectedly zero; cannot build required event")
    return ConstraintSystem(
        variables=("C+inf", "D+inf", "C-inf", "D-inf", "C+0", "D+0", "C-0", "D-0"),
        implications=(
            Implication(cid="P(D-inf|C+inf)=1", antecedents=(("C+inf", True),),
                        consequent=("D-inf", True)),
            Implication(cid="P(D+inf|C-inf)=1", antecedents=(("C-inf", True),),
                        consequent=("D+inf", True)),
            Implication(cid="P(C+inf|D-0)=1", antecedents=(("D-0", True),),
                        consequent=("C+inf", True)),
            Implication(cid="P(C-inf|D+0)=1", antecedents=(("D+0", True),),
                        consequent=("C-inf", True)),
        ),
        exclusions=(Exclusion(cid="<C+inf C-inf>=0",
                              literals=(("C+inf", True), ("C-inf", True))),),
        required_positive=(RequiredEvent(cid="<D+0 D-0>>0",
                                         literals=(("D+0", True), ("D-0", True))),),
    )
