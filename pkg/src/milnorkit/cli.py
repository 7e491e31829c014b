"""Command line entry point: ``milnorkit <subcommand> [flags]``.

Every subcommand builds a JSON-serialisable payload. ``--output table``
prints the same payload flattened to one ``path  value`` line per leaf.
Exit status: 0 success, 1 domain error (payload {"error": ...}), 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__

MATRIX_HELP = 'monodromy as "a,b;c,d" (rows separated by ";"), determinant 1'
BRAID_HELP = 'braid word such as "s1 S2 s1" (s<i> = sigma_i, S<i> = its inverse)'
WORD_HELP = 'free group word over tokens x<i>, X<i> (capital = inverse), e.g. "X1X2x1x2"'


@dataclass
class CommandConfig:
    subcommand: str
    options: dict = field(default_factory=dict)
    output: str = "json"
    fixtures: str | None = None


class DomainError(Exception):
    pass


# --- subcommands --------------------------------------------------------------

def _witt(o):
    from .witt import WittTable
    return WittTable.build(o["k"], o["max_weight"]).to_json()


def _hall(o):
    from .freegroup import hall_basis
    from .witt import witt_rank
    basis = hall_basis(o["k"], o["max_weight"])
    counts = {}
    for c in basis:
        counts[str(c.weight)] = counts.get(str(c.weight), 0) + 1
    return {"k": o["k"], "max_weight": o["max_weight"],
            "counts": counts,
            "witt": {str(w): witt_rank(w, o["k"]) for w in range(1, o["max_weight"] + 1)},
            "commutators": [{"weight": c.weight, "ordinal": c.ordinal, "bracket": str(c),
                             "word": str(c.expand())} for c in basis]}


def _magnus(o):
    from .freegroup import FreeWord
    from .magnus import magnus_expand
    w = FreeWord.parse(o["word"])
    return magnus_expand(w, o["k"], o["cap"]).to_json()


def _rank(o):
    from .lie import milnor_module
    from .witt import milnor_module_rank
    mod = milnor_module(o["k"], o["n"])
    out = {"k": o["k"], "n": o["n"], "rank": mod.rank,
           "formula_rank": milnor_module_rank(o["k"], o["n"]),
           "agrees": mod.rank == milnor_module_rank(o["k"], o["n"]),
           "ambient_dim": mod.ambient_dim,
           "cokernel_torsion": list(mod.cokernel_torsion),
           "cokernel_free_rank": mod.cokernel_free_rank,
           "basis": [mod.describe([int(i == j) for i in range(mod.rank)]) for j in range(mod.rank)]}
    if o["n"] == o["k"] - 1 and o["k"] >= 3:
        from .lie import relabel_orbit_count
        oc = relabel_orbit_count(o["k"])
        out["orbit_count"] = oc.count
        out["orbit_count_flag"] = oc.flag
    return out


def _m_count(o):
    from .lie import relabel_orbit_count
    return relabel_orbit_count(o["k"]).to_json()


def _load_link(o, fixtures):
    from .freegroup import FreeWord
    from .links import BraidWord, LinkPresentation, braid_to_wirtinger, load_fixture, milnor_braid
    given = [key for key in ("input", "braid", "fixture", "word") if o.get(key)]
    if len(given) != 1:
        raise DomainError("give exactly one of --input, --braid, --fixture, --word")
    if o.get("input"):
        return LinkPresentation.load(o["input"]), None
    if o.get("braid"):
        return braid_to_wirtinger(BraidWord.parse(o["braid"]), o["braid"]), None
    if o.get("fixture"):
        return load_fixture(o["fixture"], fixtures), None
    w = FreeWord.parse(o["word"])
    return braid_to_wirtinger(milnor_braid(w), str(w)), w


def _milnor(o, fixtures):
    from .links import FirstNonvanishing, MilnorInvariants, align_tables, milnor_link_predict
    p, w = _load_link(o, fixtures)
    inv = MilnorInvariants(p, o["max_length"])
    tables = {str(r): inv.table(r) for r in range(2, o["max_length"] + 1)}
    first = next((int(r) for r, t in tables.items() if t.nonzero()), None)
    out = {"name": p.name, "components": p.components,
           "linking_numbers": {f"{i + 1} {j + 1}": p.linking_number(i, j)
                               for i in range(p.components) for j in range(i + 1, p.components)},
           "first_nonvanishing": first,
           "tables": {r: t.to_json() for r, t in tables.items()}}
    if w is not None:
        pred = milnor_link_predict(w)
        out["predicted"] = pred.to_json()
        if pred.length in map(int, tables):
            perm = align_tables(pred, tables[str(pred.length)])
            out["prediction_alignment"] = [i + 1 for i in perm] if perm is not None else None
    return out


def _bundle_check(o):
    from .bundle import Monodromy, bundle_check
    return bundle_check(Monodromy.parse(o["matrix"]), o["jmax"]).to_json()


def _report(o):
    from .bundle import Monodromy
    from .report import family_size_report
    return family_size_report(Monodromy.parse(o["matrix"]), o["n_max"], o["jmax"])


def _distinguish(o):
    from .bundle import Monodromy
    from .report import LabeledMilnorClass, distinguish, orbit_normal_form
    A = Monodromy.parse(o["matrix"])
    c1, c2 = LabeledMilnorClass.load(o["class1"]), LabeledMilnorClass.load(o["class2"])
    return {"result": distinguish(c1, c2, A),
            "normal_forms": [orbit_normal_form(c1, A).to_json(), orbit_normal_form(c2, A).to_json()]}


COMMANDS = {
    "witt": _witt, "hall": _hall, "magnus": _magnus, "rank": _rank, "m-count": _m_count,
    "milnor": _milnor, "bundle-check": _bundle_check, "report": _report, "distinguish": _distinguish,
}


# --- rendering ------------------------------------------------------------------

def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        if not obj:
            yield prefix, "{}"
        for key, val in obj.items():
            yield from _flatten(val, f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(obj, list):
        if not obj:
            yield prefix, "[]"
        for i, val in enumerate(obj):
            yield from _flatten(val, f"{prefix}[{i}]")
    else:
        yield prefix, json.dumps(obj, ensure_ascii=False)


def render(payload, mode: str) -> str:
    if mode == "json":
        return json.dumps(payload, indent=2, ensure_ascii=False)
    rows = list(_flatten(payload))
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def run(config: CommandConfig) -> tuple[int, str]:
    fn = COMMANDS.get(config.subcommand)
    if fn is None:
        return 2, json.dumps({"error": f"unknown subcommand {config.subcommand!r}"})
    try:
        payload = fn(config.options, config.fixtures) if config.subcommand == "milnor" else fn(config.options)
    except (ValueError, DomainError, FileNotFoundError, KeyError, json.JSONDecodeError) as exc:
        msg = str(exc) if not isinstance(exc, KeyError) else f"missing field {exc}"
        return 1, json.dumps({"error": msg})
    return 0, render(payload, config.output)


# --- argument parsing -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=["json", "table"], default=argparse.SUPPRESS,
                        help="output format (default json)")
    common.add_argument("--fixtures", default=argparse.SUPPRESS, metavar="DIR",
                        help="directory of link fixtures (default: shipped fixtures)")
    ap = argparse.ArgumentParser(prog="milnorkit", parents=[common], description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_, description=help_)

    p = add("witt", "ranks N_w(k) of the free Lie ring for w = 1..max-weight")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-weight", type=int, required=True)

    p = add("hall", "Hall basic commutators up to a weight, with their expanded words")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-weight", type=int, required=True)

    p = add("magnus", "truncated Magnus expansion of a word (keys are 1-based index strings)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, required=True, help="degree cap")
    p.add_argument("--word", required=True, help=WORD_HELP)

    p = add("rank", "rank and canonical basis of the Milnor module D_n(k)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("m-count", "relabelling orbit count M(k) on D_{k-1}(k)")
    p.add_argument("--k", type=int, required=True)

    p = add("milnor", "Milnor invariants of a link up to a length")
    p.add_argument("--input", metavar="FILE", help="link presentation JSON (see FORMATS.md)")
    p.add_argument("--braid", help=BRAID_HELP)
    p.add_argument("--fixture", help="name of a shipped or --fixtures link")
    p.add_argument("--word", help="realise " + WORD_HELP + " as a pure braid closure and compare with the prediction")
    p.add_argument("--max-length", type=int, required=True)

    p = add("bundle-check", "conditions for the torus bundle with the given monodromy")
    p.add_argument("--matrix", required=True, help=MATRIX_HELP)
    p.add_argument("--jmax", type=int, default=50, help="power bound for the centralizer test")

    p = add("report", "rank lower bounds per level for a torus bundle")
    p.add_argument("--matrix", required=True, help=MATRIX_HELP)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--jmax", type=int, default=50)

    p = add("distinguish", "compare two labelled classes in the coinvariants")
    p.add_argument("--matrix", required=True, help=MATRIX_HELP)
    p.add_argument("--class1", required=True, metavar="FILE")
    p.add_argument("--class2", required=True, metavar="FILE")
    return ap


def parse_config(argv) -> CommandConfig:
    ns = vars(build_parser().parse_args(argv))
    name = ns.pop("subcommand")
    output = ns.pop("output", "json")
    fixtures = ns.pop("fixtures", None)
    return CommandConfig(name, ns, output, fixtures)


def main(argv=None) -> int:
    config = parse_config(sys.argv[1:] if argv is None else argv)
    status, text = run(config)
    print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
