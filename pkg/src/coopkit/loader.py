"""JSON documents for belief spaces and repeated games.

Space document::

    {
      "states": ["1/2,1/2", "1/2,1/4"],
      "lambda": {"1/2,1/2": ["1/2", "1/2"], "1/2,1/4": ["1/2", "1/4"]},
      "kernels": {"1": {"<state>": {"<state>": "1/3", ...}, ...}, "2": {...}},
      "prior": {"1/2,1/2": "1/3", "1/2,1/4": "2/3"}
    }

Game document::

    {
      "name": "pd",
      "actions": [["D", "C"], ["D", "C"]],
      "payoffs": {
        "1": {"D,D": "1", "D,C": "4", "C,D": "0", "C,C": "3"},
        "2": {"D,D": "1", "D,C": "0", "C,D": "4", "C,C": "3"}
      },
      "sigma": [{"D": "1"}, {"D": "1"}],
      "tau": ["C", "C"]
    }

Payoff keys are "<action of player 1>,<action of player 2>". Numbers are
integers, "p/q" or exact decimal strings; floating-point literals are
rejected. Omitted kernel entries are 0.
"""

from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from coopkit import exceptions
from coopkit import fixtures
from coopkit import logger
from coopkit import stage_game
from coopkit.belief_space import PLAYERS, BeliefSpace, build
from coopkit.rationals import format_rational, loads_exact, parse_rational


def _field(data: Mapping[str, Any], key: str, kind: type, where: str) -> Any:
    if not isinstance(data, Mapping):
        raise exceptions.ParseError("%s must be a JSON object" % where, "BAD_DOCUMENT")
    if key not in data:
        raise exceptions.ParseError("%s is missing field %r" % (where, key), "MISSING_FIELD")
    value = data[key]
    if not isinstance(value, kind):
        raise exceptions.ParseError(
            "Field %r of %s must be a %s" % (key, where, kind.__name__), "BAD_FIELD"
        )
    return value


def _per_player(data: Mapping[str, Any], kind: type, where: str) -> list:
    return [_field(data, str(player), kind, where) for player in PLAYERS]


def space_from_dict(
    data: Mapping[str, Any], check_prior_consistency: bool = False, validate: bool = True
) -> BeliefSpace:
    """Build a belief space from its JSON document.

    Raises:
        ParseError: For structurally malformed documents.
        ValidationError: For documents violating a belief-space invariant.
    """
    states = _field(data, "states", list, "space")
    discounts = _field(data, "lambda", dict, "space")
    kernels = _per_player(_field(data, "kernels", dict, "space"), dict, "kernels")
    prior = data.get("prior")
    if prior is not None and not isinstance(prior, dict):
        raise exceptions.ParseError("Field 'prior' of space must be an object", "BAD_FIELD")
    for pair in discounts.values():
        if not isinstance(pair, list):
            raise exceptions.ParseError("Entries of 'lambda' must be [lambda1, lambda2]", "BAD_DISCOUNT_PAIR")
    return build(
        states,
        discounts,
        kernels,
        prior=prior,
        check_prior_consistency=check_prior_consistency,
        validate=validate,
    )


def space_to_dict(space: BeliefSpace) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "states": list(space.states),
        "lambda": {s: [format_rational(v) for v in space.discounts[s]] for s in space.states},
        "kernels": {
            str(player): {
                s: {t: format_rational(p) for t, p in sorted(space.row(player, s).items())}
                for s in space.states
            }
            for player in PLAYERS
        },
    }
    if space.prior is not None:
        data["prior"] = {s: format_rational(p) for s, p in space.prior.items()}
    return data


def _read(path: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise exceptions.ParseError("Cannot read %s: %s" % (path, e), "UNREADABLE") from e
    return loads_exact(text)


def load_space(path: str, check_prior_consistency: bool = False, validate: bool = True) -> BeliefSpace:
    logger.get_logger().debug("Loading belief space from %s", path)
    return space_from_dict(_read(path), check_prior_consistency, validate)


def resolve_space(
    spec: str, check_prior_consistency: bool = False, validate: bool = True
) -> BeliefSpace:
    """A belief space from a file path or a built-in fixture name.

    Fixture names may carry a ".json" suffix, e.g. "prisonerex3.json".

    Raises:
        UnknownExampleError: If ``spec`` is neither a file nor a fixture.
    """
    if Path(spec).is_file():
        return load_space(spec, check_prior_consistency, validate)
    name = Path(spec).name
    if name.endswith(".json"):
        name = name[: -len(".json")]
    return fixtures.space_fixture(name)


def _payoff_table(raw: Mapping[str, Any], actions: list, player: int) -> Dict[tuple, Any]:
    table = {}
    for key, value in raw.items():
        profile = tuple(part.strip() for part in key.split(","))
        if len(profile) != 2 or profile[0] not in actions[0] or profile[1] not in actions[1]:
            raise exceptions.ParseError(
                "Payoff key %r of player %d is not an action profile \"a1,a2\"" % (key, player),
                "BAD_PAYOFFS",
            )
        table[profile] = value
    return table


def game_from_dict(data: Mapping[str, Any]) -> stage_game.RepeatedGame:
    """Build and validate a repeated game from its JSON document.

    Raises:
        ParseError: For structurally malformed documents.
        GameValidationError: If sigma or tau are invalid.
    """
    actions = _field(data, "actions", list, "game")
    if len(actions) != 2 or not all(isinstance(a, list) for a in actions):
        raise exceptions.ParseError("Field 'actions' must hold two action lists", "BAD_FIELD")
    tables = [
        _payoff_table(raw, actions, player)
        for player, raw in zip(PLAYERS, _per_player(_field(data, "payoffs", dict, "game"), dict, "payoffs"))
    ]
    stage = stage_game.make_stage_game(actions, tables)
    sigma = _field(data, "sigma", list, "game")
    tau = _field(data, "tau", list, "game")
    if any(not isinstance(s, dict) for s in sigma):
        raise exceptions.ParseError("sigma entries must be objects action -> probability", "BAD_FIELD")
    return stage_game.build_game(stage, sigma, tau, name=data.get("name", "custom"))


def game_to_dict(game: stage_game.RepeatedGame) -> Dict[str, Any]:
    stage = game.stage
    return {
        "name": game.name,
        "actions": [list(a) for a in stage.actions],
        "payoffs": {
            str(player): {
                "%s,%s" % (a1, a2): format_rational(stage.payoffs[player - 1][(a1, a2)])
                for a1 in stage.actions[0]
                for a2 in stage.actions[1]
            }
            for player in PLAYERS
        },
        "sigma": [{a: format_rational(p) for a, p in s.items()} for s in game.profile.sigma],
        "tau": list(game.profile.tau),
    }


def _family_parameter(spec: str) -> Optional[str]:
    _, _, rest = spec.partition(":")
    if not rest:
        return None
    key, _, value = rest.partition("=")
    if key.strip() != "a" or not value:
        raise exceptions.ParseError("Expected g3x3:a=<rational>, got %r" % spec, "BAD_GAME_SPEC")
    return value.strip()


def load_game(spec: str) -> stage_game.RepeatedGame:
    """A repeated game from "pd", "g3x3:a=<rational>" or a JSON file path.

    Raises:
        UnknownExampleError: If ``spec`` is neither a known game nor a file.
    """
    if spec == "pd":
        return fixtures.pd()
    if spec == "g3x3" or spec.startswith("g3x3:"):
        parameter = _family_parameter(spec)
        return fixtures.g3x3() if parameter is None else fixtures.g3x3(parameter)
    if Path(spec).is_file():
        logger.get_logger().debug("Loading game from %s", spec)
        return game_from_dict(_read(spec))
    raise exceptions.UnknownExampleError(spec, ("pd", "g3x3"))
