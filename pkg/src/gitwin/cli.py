"""Command line interface.

Six subcommands over two JSON file formats (action problems and graded
complexes), each printing one canonical JSON report to stdout (or a plain
text rendering with ``--format text``).

Exit codes: 0 success; 2 bad input or unmet mathematical precondition;
1 internal invariant failure (a bug worth reporting); 64 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .errors import GitwinError, InputError, InternalError, PreconditionError
from .gitcore import TorusActionProblem, kn_stratification
from .gradedmod.io import complex_from_payload
from .gradedmod.lift import window_lift_with_trace
from .gradedmod.ring import WeightedRing
from .polyhedra import InnerProduct
from .report import (
    build_report,
    fan_payload,
    lift_payload,
    quantize_payload,
    stratification_payload,
    wall_crossing_payload,
    window_set_payload,
)
from .serialize import canonical_json, parse_fraction
from .vgit import git_fan, wall_crossing_report
from .windows import WindowSpec, enumerate_window_characters

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_USAGE = 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _load_json_file(path: str, what: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputError(f"{what} {path!r}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} {path!r}: invalid JSON: {exc}")


def _expect_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    return value


def _expect_int_list(value, where: str) -> List[int]:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list, got {type(value).__name__}")
    return [_expect_int(v, f"{where}[{i}]") for i, v in enumerate(value)]


class LoadedProblem(NamedTuple):
    """A validated problem file: the action plus optional file defaults."""

    problem: TorusActionProblem
    window: Optional[Tuple[int, ...]]
    wall_point: Optional[Tuple[int, ...]]
    direction: Optional[Tuple[int, ...]]


def _int_or_int_list(value, where: str) -> Tuple[int, ...]:
    if isinstance(value, list):
        return tuple(_expect_int_list(value, where))
    return (_expect_int(value, where),)


def load_problem(data) -> LoadedProblem:
    """Validate parsed problem JSON, naming every bad field.

    Required fields: ``weights`` (one integer row of length k per
    coordinate) and ``linearization`` (length-k integer vector).  Optional:
    ``k`` and ``n`` (cross-checked shape declarations), ``inner_product``
    (defaults to the identity), ``window`` (default window low ends,
    defaults to 0), and a ``wall_crossing`` block with ``wall_point`` and
    ``direction`` defaults for the wallcross command.
    """
    if not isinstance(data, dict):
        raise InputError(
            f"problem: expected an object, got {type(data).__name__}"
        )
    known = {
        "k",
        "n",
        "weights",
        "linearization",
        "inner_product",
        "window",
        "wall_crossing",
    }
    unknown = sorted(set(data) - known)
    if unknown:
        raise InputError(f"problem: unknown fields {unknown}")
    for field in ("weights", "linearization"):
        if field not in data:
            raise InputError(f"problem.{field}: missing")
    linearization = _expect_int_list(data["linearization"], "problem.linearization")
    rank = len(linearization)
    if "k" in data:
        declared = _expect_int(data["k"], "problem.k")
        if declared != rank:
            raise InputError(
                f"problem.k: declared rank {declared} does not match the "
                f"linearization length {rank}"
            )
    if not isinstance(data["weights"], list):
        raise InputError("problem.weights: expected a list of integer vectors")
    weights = []
    for j, row in enumerate(data["weights"]):
        entries = _expect_int_list(row, f"problem.weights[{j}]")
        if len(entries) != rank:
            raise InputError(
                f"problem.weights[{j}]: expected {rank} entries, got "
                f"{len(entries)}"
            )
        weights.append(tuple(entries))
    if "n" in data:
        declared = _expect_int(data["n"], "problem.n")
        if declared != len(weights):
            raise InputError(
                f"problem.n: declared dimension {declared} does not match "
                f"{len(weights)} weight rows"
            )
    inner = None
    if "inner_product" in data and data["inner_product"] is not None:
        matrix = data["inner_product"]
        if not isinstance(matrix, list):
            raise InputError("problem.inner_product: expected a matrix")
        rows = []
        for i, row in enumerate(matrix):
            if not isinstance(row, list):
                raise InputError(f"problem.inner_product[{i}]: expected a list")
            rows.append(
                tuple(
                    parse_fraction(v, f"problem.inner_product[{i}][{j}]")
                    for j, v in enumerate(row)
                )
            )
        inner = InnerProduct(tuple(rows))
    window = None
    if "window" in data and data["window"] is not None:
        window = _int_or_int_list(data["window"], "problem.window")
    wall_point = None
    direction = None
    if "wall_crossing" in data and data["wall_crossing"] is not None:
        block = data["wall_crossing"]
        if not isinstance(block, dict):
            raise InputError("problem.wall_crossing: expected an object")
        extra = sorted(set(block) - {"wall_point", "direction"})
        if extra:
            raise InputError(f"problem.wall_crossing: unknown fields {extra}")
        if "wall_point" in block:
            wall_point = _int_or_int_list(
                block["wall_point"], "problem.wall_crossing.wall_point"
            )
            if len(wall_point) != rank:
                raise InputError(
                    "problem.wall_crossing.wall_point: expected "
                    f"{rank} entries, got {len(wall_point)}"
                )
        if "direction" in block:
            direction = _int_or_int_list(
                block["direction"], "problem.wall_crossing.direction"
            )
            if len(direction) != rank:
                raise InputError(
                    "problem.wall_crossing.direction: expected "
                    f"{rank} entries, got {len(direction)}"
                )
    problem = TorusActionProblem(
        rank=rank,
        dim=len(weights),
        weights=tuple(weights),
        linearization=tuple(linearization),
        inner_product=inner,
    )
    return LoadedProblem(problem, window, wall_point, direction)


def _parse_vector_flag(text: str, what: str) -> tuple:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise InputError(f"{what}: empty vector")
    values = []
    for p in parts:
        try:
            values.append(int(p))
        except ValueError:
            raise InputError(f"{what}: {p!r} is not an integer")
    return tuple(values)


# -- text renderings -------------------------------------------------------


def _vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _stratify_text(result: dict) -> str:
    lines = [f"strata: {len(result['strata'])}"]
    for i, s in enumerate(result["strata"]):
        lines.append(
            f"  [{i}] lambda={_vec(s['destabilizer'])}  "
            f"mu^2={s['mu_squared']}  eta={s['eta']}  "
            f"omega={s['omega_weight']}  fixed={_vec(s['fixed_coords'])}  "
            f"members={s['member_supports']}"
        )
    if result["semistable"] == "all":
        lines.append("semistable: all supports")
    else:
        lines.append(
            f"semistable: {result['semistable']['count']} supports "
            f"({result['semistable']['strictly_semistable']} strictly "
            "semistable)"
        )
    return "\n".join(lines)


def _fan_text(result: dict) -> str:
    lines = [
        "effective cone rays: "
        + (
            ", ".join(_vec(g) for g in result["effective_generators"])
            or "(origin only)"
        ),
        f"chambers: {len(result['chambers'])}",
    ]
    for chamber in result["chambers"]:
        lines.append(
            f"  [{chamber['index']}] rays "
            + (", ".join(_vec(g) for g in chamber["generators"]) or "(none)")
            + f"  witness {_vec(chamber['witness'])}"
        )
    lines.append(f"walls: {len(result['walls'])}")
    for wall in result["walls"]:
        adjacency = ", ".join(str(i) for i in wall["adjacent_chambers"])
        lines.append(
            f"  normal {_vec(wall['normal'])}  chambers [{adjacency}]  rays "
            + (", ".join(_vec(g) for g in wall["generators"]) or "(none)")
        )
    return "\n".join(lines)


def _wallcross_text(result: dict) -> str:
    lines = [
        f"direction: {_vec(result['direction'])}  "
        f"(epsilon = 1/{result['epsilon_denominator']})",
        f"plus side  {_vec(result['plus_character'])}: "
        f"{result['plus_classification']}",
        f"minus side {_vec(result['minus_character'])}: "
        f"{result['minus_classification']}",
        f"balanced: {'yes' if result['balanced'] else 'no'}",
        f"calabi-yau shortcut: {'yes' if result['calabi_yau'] else 'no'}",
        f"verdict: {result['verdict']}",
    ]
    if result["degenerate_side"] is not None:
        lines.insert(3, f"degenerate side: {result['degenerate_side']}")
    for m in result["matches"]:
        lines.append(
            f"  match +[{m['plus_index']}] ~ -[{m['minus_index']}]  "
            f"eta {m['eta_plus']}/{m['eta_minus']}  "
            f"omega {m['omega_weight']}  "
            f"mirror {'yes' if m['members_mirror'] else 'no'}"
        )
    return "\n".join(lines)


def _windows_text(result: dict) -> str:
    lines = [
        f"window lows: {_vec(result['window'])}  box radius: "
        f"{result['box_radius']}",
        f"finite: {'yes' if result['finite'] else 'no'}  complete: "
        f"{'yes' if result['complete'] else 'no'}"
        + (
            f"  required radius: {result['required_radius']}"
            if result["required_radius"] is not None
            else ""
        ),
        f"characters in box: {result['count_in_box']}",
    ]
    for chi in result["characters"]:
        lines.append(f"  {_vec(chi)}")
    if result["slab_basis"]:
        lines.append(
            "invariant directions: "
            + ", ".join(_vec(v) for v in result["slab_basis"])
        )
    return "\n".join(lines)


def _profile_text(profile: dict) -> str:
    if not profile:
        return "zero complex"
    parts = []
    for degree in sorted(profile, key=int):
        weights = ", ".join(str(w) for w in profile[degree])
        parts.append(f"deg {degree}: [{weights}]")
    return "; ".join(parts)


def _lift_text(result: dict) -> str:
    lines = [
        f"window: [{result['window_low']}, "
        f"{result['window_low'] + result['eta']})  strategy: "
        f"{result['strategy']}",
        f"input : {_profile_text(result['input_profile'])}",
        f"output: {_profile_text(result['output_profile'])}",
        f"steps: {result['iterations']}",
    ]
    for step in result["steps"]:
        lines.append(
            f"  {step['side']} at weight {step['weight']} "
            f"(block rank {step['block_total_rank']})"
        )
    lines.append(
        "window test: " + ("pass" if result["window_ok"] else "FAIL")
    )
    return "\n".join(lines)


def _quantize_text(result: dict) -> str:
    lines = [
        f"ring weights: {_vec(result['ring_weights'])}",
        "difference  equivariant  quotient  agree",
    ]
    for row in result["table"]:
        lines.append(
            f"{row['difference']:>10}  {row['equivariant']:>11}  "
            f"{row['quotient']:>8}  {'yes' if row['agree'] else 'NO'}"
        )
    lines.append(
        "all agree: " + ("yes" if result["all_agree"] else "NO")
    )
    return "\n".join(lines)


_TEXT_RENDERERS = {
    "stratify": _stratify_text,
    "fan": _fan_text,
    "wallcross": _wallcross_text,
    "windows": _windows_text,
    "lift": _lift_text,
    "quantize": _quantize_text,
}


# -- subcommand handlers ---------------------------------------------------


def _cone_ring(problem: TorusActionProblem, command: str) -> WeightedRing:
    """Induced coordinate ring for the one-stratum cone setting.

    The graded-module commands only make sense when the whole space
    collapses onto a single stratum at the origin: rank 1, exactly one
    stratum, no fixed coordinates, and every coordinate strictly
    destabilized.  The induced grading weights are the negated pairings.
    """
    if problem.rank != 1:
        raise PreconditionError(
            f"{command} works with one-parameter actions only"
        )
    stratification = kn_stratification(problem)
    if len(stratification.strata) != 1:
        raise PreconditionError(
            f"{command} needs the affine-cone shape: exactly one unstable "
            f"stratum, found {len(stratification.strata)}"
        )
    stratum = stratification.strata[0]
    if stratum.fixed_coords:
        raise PreconditionError(
            f"{command} needs a destabilizer moving every coordinate"
        )
    lam = stratum.destabilizer
    ring_weights = []
    for j in range(problem.dim):
        pairing = sum(l * a for l, a in zip(lam, problem.weights[j]))
        if pairing >= 0:
            raise PreconditionError(
                f"{command} needs all coordinates strictly destabilized at "
                f"the origin; coordinate {j} pairs to {pairing}"
            )
        ring_weights.append(-int(pairing))
    return WeightedRing(tuple(ring_weights))


def _cmd_stratify(args) -> dict:
    data = _load_json_file(args.problem, "problem file")
    loaded = load_problem(data)
    result = stratification_payload(kn_stratification(loaded.problem))
    return build_report("stratify", data, result)


def _cmd_fan(args) -> dict:
    data = _load_json_file(args.problem, "problem file")
    loaded = load_problem(data)
    result = fan_payload(git_fan(loaded.problem))
    return build_report("fan", data, result)


def _cmd_wallcross(args) -> dict:
    data = _load_json_file(args.problem, "problem file")
    loaded = load_problem(data)
    problem = loaded.problem
    if args.wall is not None:
        wall_point = _parse_vector_flag(args.wall, "--wall")
    else:
        wall_point = loaded.wall_point
    if wall_point is not None:
        if len(wall_point) != problem.rank:
            raise InputError(
                f"wall point has length {len(wall_point)}, expected "
                f"{problem.rank}"
            )
        problem = problem.with_linearization(wall_point)
    if args.direction is not None:
        direction = _parse_vector_flag(args.direction, "--direction")
    elif loaded.direction is not None:
        direction = loaded.direction
    else:
        raise InputError(
            "wallcross needs a crossing direction: pass --direction or add "
            "a wall_crossing block to the problem file"
        )
    if len(direction) != problem.rank:
        raise InputError(
            f"direction has length {len(direction)}, expected {problem.rank}"
        )
    result = wall_crossing_payload(wall_crossing_report(problem, direction))
    return build_report("wallcross", data, result)


def _cmd_windows(args) -> dict:
    data = _load_json_file(args.problem, "problem file")
    loaded = load_problem(data)
    stratification = kn_stratification(loaded.problem)
    count = len(stratification.strata)
    if args.window is not None:
        lows = _parse_vector_flag(args.window, "--window")
    elif loaded.window is not None:
        lows = loaded.window
    else:
        lows = (0,)
    if len(lows) == 1 and count != 1:
        window = WindowSpec.broadcast(lows[0], count)
    elif len(lows) == count:
        window = WindowSpec(lows)
    else:
        raise InputError(
            f"window has {len(lows)} entries for {count} strata; pass one "
            "value to broadcast or one value per stratum"
        )
    result = window_set_payload(
        enumerate_window_characters(stratification, window, args.box)
    )
    return build_report("windows", data, result)


def _window_low_scalar(args, loaded: LoadedProblem) -> int:
    if args.window is not None:
        return args.window
    if loaded.window is not None:
        if len(loaded.window) != 1:
            raise InputError(
                "problem.window: lift takes a single window low, got "
                f"{len(loaded.window)} entries"
            )
        return loaded.window[0]
    return 0


def _cmd_lift(args) -> dict:
    problem_data = _load_json_file(args.problem, "problem file")
    loaded = load_problem(problem_data)
    ring = _cone_ring(loaded.problem, "lift")
    complex_data = _load_json_file(args.complex, "complex file")
    F = complex_from_payload(complex_data)
    if F.ring.weights != ring.weights:
        raise InputError(
            f"complex ring weights {F.ring.weights} do not match the "
            f"problem's induced weights {ring.weights}"
        )
    window_low = _window_low_scalar(args, loaded)
    trace = window_lift_with_trace(F, window_low, args.strategy)
    result = lift_payload(F, trace, window_low, args.strategy)
    return build_report(
        "lift", {"problem": problem_data, "complex": complex_data}, result
    )


def _cmd_quantize(args) -> dict:
    data = _load_json_file(args.problem, "problem file")
    loaded = load_problem(data)
    ring = _cone_ring(loaded.problem, "quantize")
    if len(set(ring.weights)) != 1:
        raise PreconditionError(
            "quantize needs equal induced weights for the closed-form "
            f"comparison, got {ring.weights}"
        )
    if args.box < 0:
        raise InputError("--box must be nonnegative")
    result = quantize_payload(ring, args.box)
    return build_report("quantize", data, result)


# -- entry point -----------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="gitwin",
        description=(
            "Exact stability stratifications, variation fans, wall "
            "crossings, grade-restriction windows, and window lifts for "
            "linear torus actions on affine space."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("json", "text"),
        default="json",
        help="output rendering (default: canonical JSON)",
    )
    sub = parser.add_subparsers(
        dest="command", metavar="command", parser_class=_Parser
    )
    sub.required = True

    p = sub.add_parser(
        "stratify",
        help="stability stratification of a problem file",
        parents=[common],
    )
    p.add_argument("problem", help="problem JSON file")
    p.set_defaults(handler=_cmd_stratify)

    p = sub.add_parser(
        "fan",
        help="chamber-and-wall decomposition of the character space",
        parents=[common],
    )
    p.add_argument("problem", help="problem JSON file")
    p.set_defaults(handler=_cmd_fan)

    p = sub.add_parser(
        "wallcross",
        help="two-sided analysis of a wall crossing",
        parents=[common],
    )
    p.add_argument("problem", help="problem JSON file")
    p.add_argument(
        "--wall",
        help=(
            "wall point, comma separated (overrides the file; defaults to "
            "the file's wall_crossing.wall_point, then its linearization)"
        ),
    )
    p.add_argument(
        "--direction",
        help="crossing direction, comma separated (overrides the file)",
    )
    p.set_defaults(handler=_cmd_wallcross)

    p = sub.add_parser(
        "windows",
        help="enumerate characters admitted by a grade-restriction window",
        parents=[common],
    )
    p.add_argument("problem", help="problem JSON file")
    p.add_argument(
        "--window",
        help=(
            "window low ends, comma separated; a single value broadcasts "
            "(default: the file's window field, then 0)"
        ),
    )
    p.add_argument(
        "--box", type=int, default=8, help="search box radius (default 8)"
    )
    p.set_defaults(handler=_cmd_windows)

    p = sub.add_parser(
        "lift",
        help="lift a graded complex into a weight window",
        parents=[common],
    )
    p.add_argument("problem", help="problem JSON file (one-stratum cone)")
    p.add_argument(
        "--complex",
        required=True,
        help="graded complex JSON file over the problem's induced ring",
    )
    p.add_argument(
        "--window",
        type=int,
        help="window low end (default: the file's window field, then 0)",
    )
    p.add_argument(
        "--strategy",
        choices=("low_first", "high_first"),
        default="low_first",
        help="which violating end to clear first",
    )
    p.set_defaults(handler=_cmd_lift)

    p = sub.add_parser(
        "quantize",
        help="equivariant vs quotient section counts for a cone problem",
        parents=[common],
    )
    p.add_argument("problem", help="problem JSON file")
    p.add_argument(
        "--box",
        type=int,
        default=10,
        help="largest twist difference to tabulate (default 10)",
    )
    p.set_defaults(handler=_cmd_quantize)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        report = args.handler(args)
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GitwinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.format == "json":
        sys.stdout.write(canonical_json(report))
    else:
        renderer = _TEXT_RENDERERS[report["command"]]
        print(renderer(report["result"]))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
