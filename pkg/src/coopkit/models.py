"""Report models for coopkit.

Every report converts to a JSON-ready dictionary (events as sorted state
lists, rationals as canonical "p/q" strings) and back again.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from coopkit.rationals import Extended, format_rational, parse_extended, parse_rational

EventPair = Tuple[frozenset, frozenset]


def event_to_list(event) -> List[str]:
    return sorted(event)


def pair_to_dict(pair: EventPair) -> Dict[str, List[str]]:
    return {"K1": event_to_list(pair[0]), "K2": event_to_list(pair[1])}


def pair_from_dict(data: Dict[str, List[str]]) -> EventPair:
    return (frozenset(data["K1"]), frozenset(data["K2"]))


def _optional(value: Optional[Extended]) -> Optional[str]:
    return None if value is None else format_rational(value)


def _read_optional(value: Optional[str]) -> Optional[Extended]:
    return None if value is None else parse_extended(value)


def _players(mapping: Dict[int, bool]) -> Dict[str, bool]:
    return {str(player): value for player, value in mapping.items()}


def _read_players(mapping: Dict[str, bool]) -> Dict[int, bool]:
    return {int(player): value for player, value in mapping.items()}


@dataclass
class Witness:
    """The first state (in sorted order) where a condition fails.

    Attributes:
        player: Player whose condition fails.
        state: Failing state.
        lhs: Left-hand side of the violated inequality.
        rhs: Right-hand side of the violated inequality.
        bound: Which bound was violated ("lambda0", "f", "g1", "g2", "g3").
    """

    player: int
    state: str
    lhs: Extended
    rhs: Extended
    bound: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            "player": self.player,
            "state": self.state,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "bound": self.bound,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Witness":
        return cls(
            player=data["player"],
            state=data["state"],
            lhs=parse_extended(data["lhs"]),
            rhs=parse_extended(data["rhs"]),
            bound=data["bound"],
        )


@dataclass
class ConditionResult:
    """Outcome of one cooperation condition for both players."""

    name: str
    passed: Dict[int, bool]
    witnesses: List[Witness] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(self.passed.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": _players(self.passed),
            "holds": self.holds,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }

    @classmethod
    def from_dict(cls, name: str, data: Dict[str, Any]) -> "ConditionResult":
        return cls(
            name=name,
            passed=_read_players(data["passed"]),
            witnesses=[Witness.from_dict(w) for w in data["witnesses"]],
        )


@dataclass
class CooperationReport:
    """Verdict on whether (K1, K2) is a pair of cooperation events.

    Attributes:
        mode: "bayesian" or "icr".
        pair: The examined events (K1, K2).
        verdict: Conjunction of the conditions checked in ``mode``.
        conditions: Condition results keyed "a", "b" and (Bayesian only) "c".
        rationalizable: ICR mode only; per player, whether K_i lies inside
            B_i(D^f(Lambda)).
        bounds_consistent: 2x2 games only; whether min(g, 1) equals
            min(f, 1) on every state.
    """

    mode: str
    pair: EventPair
    verdict: bool
    conditions: Dict[str, ConditionResult]
    rationalizable: Optional[Dict[int, bool]] = None
    bounds_consistent: Optional[bool] = None

    def witness(self) -> Optional[Witness]:
        """First witness of the first failing condition, if any."""
        for name in sorted(self.conditions):
            if self.conditions[name].witnesses:
                return self.conditions[name].witnesses[0]
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mode": self.mode,
            "pair": pair_to_dict(self.pair),
            "verdict": self.verdict,
            "conditions": {name: c.to_dict() for name, c in self.conditions.items()},
            "rationalizable": None if self.rationalizable is None else _players(self.rationalizable),
            "bounds_consistent": self.bounds_consistent,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CooperationReport":
        rationalizable = data.get("rationalizable")
        return cls(
            mode=data["mode"],
            pair=pair_from_dict(data["pair"]),
            verdict=data["verdict"],
            conditions={
                name: ConditionResult.from_dict(name, c) for name, c in data["conditions"].items()
            },
            rationalizable=None if rationalizable is None else _read_players(rationalizable),
            bounds_consistent=data.get("bounds_consistent"),
        )


@dataclass
class DeviationEntry:
    """Best deviation of one player at one state.

    Attributes:
        player: Deviating player.
        state: State of the world.
        conforming: Expected payoff of following the grim-trigger profile.
        best: Expected payoff of the best deviation found.
        first_action: Stage-1 action of the best deviation.
        continuation: Play against a still-cooperating opponent afterwards:
            "cooperate", "defect:<action>" or "punish".
        gain: best - conforming (never negative).
    """

    player: int
    state: str
    conforming: Fraction
    best: Fraction
    first_action: str
    continuation: str
    gain: Fraction

    def to_dict(self) -> Dict[str, Any]:
        return {
            "player": self.player,
            "state": self.state,
            "conforming": format_rational(self.conforming),
            "best": format_rational(self.best),
            "first_action": self.first_action,
            "continuation": self.continuation,
            "gain": format_rational(self.gain),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DeviationEntry":
        return cls(
            player=data["player"],
            state=data["state"],
            conforming=parse_rational(data["conforming"]),
            best=parse_rational(data["best"]),
            first_action=data["first_action"],
            continuation=data["continuation"],
            gain=parse_rational(data["gain"]),
        )


@dataclass
class DeviationReport:
    """Payoff-oracle result for a grim-trigger profile.

    Attributes:
        pair: The examined events (K1, K2).
        entries: One entry per player and state, sorted by (player, state).
        max_gain: Largest deviation gain.
        tolerance: Gain tolerated (0 for exact equilibrium).
    """

    pair: EventPair
    entries: List[DeviationEntry]
    max_gain: Fraction
    tolerance: Fraction = Fraction(0)

    @property
    def equilibrium(self) -> bool:
        return self.max_gain <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pair": pair_to_dict(self.pair),
            "entries": [e.to_dict() for e in self.entries],
            "max_gain": format_rational(self.max_gain),
            "tolerance": format_rational(self.tolerance),
            "equilibrium": self.equilibrium,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DeviationReport":
        return cls(
            pair=pair_from_dict(data["pair"]),
            entries=[DeviationEntry.from_dict(e) for e in data["entries"]],
            max_gain=parse_rational(data["max_gain"]),
            tolerance=parse_rational(data["tolerance"]),
        )


@dataclass
class RobustnessReport:
    """Result of an almost-complete-information check or robust construction.

    Attributes:
        kind: "ms", "strong", "profile" or "f_epsilon".
        parameters: Exact inputs (eps, delta, eps_prime) that were given.
        holds: Verdict of the check; for constructions, the oracle verdict.
        region: Common-belief region computed (R, the union of the
            D(E_s), or D(Lambda)).
        mass: Prior mass of ``region`` when a prior exists.
        reading: Quantifier reading of the strong definition.
        failures: Strong definition only; failing (state, player) pairs.
        pair: Constructed profile events.
        max_gain: Largest deviation gain of the constructed profile.
        payoff_scale: max |u| / (1 - lambda_i) over players and states.
        m0: 2 * max_i (u_i(sigma) - u_i(tau_i, sigma_j)) for 2x2 games.
        unravelled_mass: prior(Lambda minus D(Lambda)) when a prior exists.
    """

    kind: str
    parameters: Dict[str, Fraction]
    holds: Optional[bool] = None
    region: Optional[frozenset] = None
    mass: Optional[Fraction] = None
    reading: Optional[str] = None
    failures: List[Tuple[str, int]] = field(default_factory=list)
    pair: Optional[EventPair] = None
    max_gain: Optional[Fraction] = None
    payoff_scale: Optional[Fraction] = None
    m0: Optional[Fraction] = None
    unravelled_mass: Optional[Fraction] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "parameters": {k: format_rational(v) for k, v in self.parameters.items()},
            "holds": self.holds,
            "region": None if self.region is None else event_to_list(self.region),
            "mass": _optional(self.mass),
            "reading": self.reading,
            "failures": [{"state": s, "player": p} for s, p in self.failures],
            "pair": None if self.pair is None else pair_to_dict(self.pair),
            "max_gain": _optional(self.max_gain),
            "payoff_scale": _optional(self.payoff_scale),
            "m0": _optional(self.m0),
            "unravelled_mass": _optional(self.unravelled_mass),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RobustnessReport":
        return cls(
            kind=data["kind"],
            parameters={k: parse_rational(v) for k, v in data["parameters"].items()},
            holds=data.get("holds"),
            region=None if data.get("region") is None else frozenset(data["region"]),
            mass=_read_optional(data.get("mass")),
            reading=data.get("reading"),
            failures=[(f["state"], f["player"]) for f in data.get("failures", [])],
            pair=None if data.get("pair") is None else pair_from_dict(data["pair"]),
            max_gain=_read_optional(data.get("max_gain")),
            payoff_scale=_read_optional(data.get("payoff_scale")),
            m0=_read_optional(data.get("m0")),
            unravelled_mass=_read_optional(data.get("unravelled_mass")),
        )


@dataclass
class InvariantCheck:
    """One validated invariant of an input document."""

    name: str
    passed: bool
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"invariant": self.name, "passed": self.passed, "error": self.error}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "InvariantCheck":
        return cls(name=data["invariant"], passed=data["passed"], error=data.get("error"))


@dataclass
class ValidationReport:
    """Per-invariant results for a belief space and optional game."""

    space: str
    checks: List[InvariantCheck]
    game: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "space": self.space,
            "game": self.game,
            "checks": [c.to_dict() for c in self.checks],
            "passed": self.passed,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ValidationReport":
        return cls(
            space=data["space"],
            game=data.get("game"),
            checks=[InvariantCheck.from_dict(c) for c in data["checks"]],
        )


@dataclass
class AnalysisReport:
    """Output of the analyze command.

    Attributes:
        space: Name or path of the belief space.
        game: Name of the repeated game.
        lambda0: Per player, the discount threshold.
        lambda_regions: (Lambda_1, Lambda_2).
        largest: Report on the largest candidate pair.
        candidate: Report on a user-supplied candidate, if any.
        pairs: Enumerated cooperation pairs, if requested.
        deviations: Oracle reports, if requested.
    """

    space: str
    game: str
    lambda0: Dict[int, Fraction]
    lambda_regions: EventPair
    largest: CooperationReport
    candidate: Optional[CooperationReport] = None
    pairs: Optional[List[EventPair]] = None
    deviations: List[DeviationReport] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "space": self.space,
            "game": self.game,
            "lambda0": {str(p): format_rational(v) for p, v in self.lambda0.items()},
            "lambda_regions": pair_to_dict(self.lambda_regions),
            "largest": self.largest.to_dict(),
            "candidate": None if self.candidate is None else self.candidate.to_dict(),
            "pairs": None if self.pairs is None else [pair_to_dict(p) for p in self.pairs],
            "deviations": [d.to_dict() for d in self.deviations],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AnalysisReport":
        candidate = data.get("candidate")
        pairs = data.get("pairs")
        return cls(
            space=data["space"],
            game=data["game"],
            lambda0={int(p): parse_rational(v) for p, v in data["lambda0"].items()},
            lambda_regions=pair_from_dict(data["lambda_regions"]),
            largest=CooperationReport.from_dict(data["largest"]),
            candidate=None if candidate is None else CooperationReport.from_dict(candidate),
            pairs=None if pairs is None else [pair_from_dict(p) for p in pairs],
            deviations=[DeviationReport.from_dict(d) for d in data.get("deviations", [])],
        )


@dataclass
class DemoCheck:
    """One expected-versus-actual comparison of a demo scenario."""

    name: str
    expected: str
    actual: str

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "expected": self.expected,
            "actual": self.actual,
            "passed": self.passed,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DemoCheck":
        return cls(name=data["name"], expected=data["expected"], actual=data["actual"])


@dataclass
class DemoResult:
    """Outcome of a built-in demo scenario."""

    name: str
    description: str
    checks: List[DemoCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "checks": [c.to_dict() for c in self.checks],
            "passed": self.passed,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DemoResult":
        return cls(
            name=data["name"],
            description=data["description"],
            checks=[DemoCheck.from_dict(c) for c in data["checks"]],
        )


@dataclass
class RobustnessRun:
    """Reports produced by one robust command."""

    space: str
    game: str
    reports: List[RobustnessReport] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "space": self.space,
            "game": self.game,
            "reports": [r.to_dict() for r in self.reports],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RobustnessRun":
        return cls(
            space=data["space"],
            game=data["game"],
            reports=[RobustnessReport.from_dict(r) for r in data["reports"]],
        )
